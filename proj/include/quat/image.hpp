#pragma once

#include "quat/qmatrix.hpp"

#include <string>

namespace quat {

// Color image as a pure quaternion matrix: part 0 is zero, parts 1..3 hold
// red, green and blue in [0, 255].
QMatrix load_image(const std::string& path);  // PNG or binary PPM (P6), by content

// Clamps to [0, 255] and rounds to nearest. Format follows the extension:
// ".ppm" writes P6, anything else writes PNG. Part 0 is ignored.
void save_image(const QMatrix& M, const std::string& path);

// Uncapped value 10 log10(255^2 m n / ||approx - truth||_F^2); returns
// kPsnrCap when the error is zero.
inline constexpr double kPsnrCap = 200.0;
double psnr(const QMatrix& approx, const QMatrix& truth);

} // namespace quat

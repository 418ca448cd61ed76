#pragma once

#include "quat/qmatrix.hpp"

#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

namespace quat::io {

// QMAT text format:
//   QMAT <m> <n>
//   <w> <x> <y> <z>        (m*n lines, row-major)
// Lines starting with '#' are comments. Values are written with 17
// significant digits so a write/read cycle is exact.
void write_qmat(std::ostream& os, const QMatrix& A);
void write_qmat(const std::filesystem::path& path, const QMatrix& A);
QMatrix read_qmat(std::istream& is);
QMatrix read_qmat(const std::filesystem::path& path);

// Singular-value sidecar:
//   QSVD <r>
//   <sigma_1>
//   ...
void write_qsvd(std::ostream& os, std::span<const double> sigma);
void write_qsvd(const std::filesystem::path& path, std::span<const double> sigma);
std::vector<double> read_qsvd(std::istream& is);
std::vector<double> read_qsvd(const std::filesystem::path& path);

// "%.17g"
std::string format_double(double v);

} // namespace quat::io

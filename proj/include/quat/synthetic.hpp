#pragma once

#include "quat/qmatrix.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace quat {

struct SynthMatrix {
    QMatrix A;
    std::vector<double> sigma;  // exact singular values, descending
};

// A = (I - 2uu^*) [diag(sigma); 0] (I - 2vv^*) for random unit quaternion
// vectors u, v drawn from `seed`. Requires m >= n = sigma.size().
SynthMatrix synth_with_spectrum(index_t m, std::span<const double> sigma, std::uint64_t seed);

// Same construction with sigma_i = rate^(i-1), i = 1..n. Requires m >= n and
// 0 < rate < 1.
SynthMatrix synth_matrix(index_t m, index_t n, double rate, std::uint64_t seed);

// Hermitian V diag(lambda) V^* with V = I - 2uu^*.
QMatrix synth_hermitian(std::span<const double> lambda, std::uint64_t seed);

std::vector<double> geometric_spectrum(index_t n, double rate);

// Number of values >= threshold.
index_t numerical_rank(std::span<const double> sigma, double threshold);

} // namespace quat

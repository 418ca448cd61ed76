#include "quat/synthetic.hpp"

#include "quat/errors.hpp"
#include "quat/householder.hpp"
#include "quat/randomized.hpp"

#include <algorithm>
#include <cmath>

namespace quat {

namespace {

// Plain reflector I - 2 w w^* for a random unit w.
Reflector random_reflector(index_t n, std::uint64_t seed) {
    const QMatrix g = sample_gaussian(n, 1, seed);
    Reflector h;
    h.v = column(g, 0);
    const double s = norm(h.v);
    for (Quaternion& x : h.v) x /= s;
    return h;
}

} // namespace

std::vector<double> geometric_spectrum(index_t n, double rate) {
    std::vector<double> s(static_cast<std::size_t>(n));
    for (index_t i = 0; i < n; ++i) s[static_cast<std::size_t>(i)] = std::pow(rate, static_cast<double>(i));
    return s;
}

SynthMatrix synth_with_spectrum(index_t m, std::span<const double> sigma, std::uint64_t seed) {
    const index_t n = static_cast<index_t>(sigma.size());
    if (n < 1 || m < n) throw InvalidArgument("synth_with_spectrum: need m >= n >= 1");
    if (!std::is_sorted(sigma.begin(), sigma.end(), std::greater<>()) || sigma.back() < 0.0)
        throw InvalidArgument("synth_with_spectrum: spectrum must be descending and nonnegative");

    SynthMatrix out;
    out.sigma.assign(sigma.begin(), sigma.end());
    out.A = QMatrix(m, n);
    for (index_t i = 0; i < n; ++i) out.A.at(0, i, i) = sigma[static_cast<std::size_t>(i)];
    apply_left(random_reflector(m, derive_seed(seed, 0)), out.A, 0);
    apply_right(random_reflector(n, derive_seed(seed, 1)), out.A, 0);
    return out;
}

SynthMatrix synth_matrix(index_t m, index_t n, double rate, std::uint64_t seed) {
    if (!(rate > 0.0 && rate < 1.0)) throw InvalidArgument("synth_matrix: rate must lie in (0, 1)");
    const std::vector<double> s = geometric_spectrum(n, rate);
    return synth_with_spectrum(m, s, seed);
}

QMatrix synth_hermitian(std::span<const double> lambda, std::uint64_t seed) {
    const index_t n = static_cast<index_t>(lambda.size());
    if (n < 1) throw InvalidArgument("synth_hermitian: empty spectrum");
    QMatrix A(n, n);
    for (index_t i = 0; i < n; ++i) A.at(0, i, i) = lambda[static_cast<std::size_t>(i)];
    const Reflector h = random_reflector(n, derive_seed(seed, 2));
    apply_left(h, A, 0);
    apply_right(h, A, 0);  // I - 2uu^* is Hermitian, so this is V^*
    return A;
}

index_t numerical_rank(std::span<const double> sigma, double threshold) {
    return static_cast<index_t>(std::count_if(sigma.begin(), sigma.end(), [&](double s) { return s >= threshold; }));
}

} // namespace quat

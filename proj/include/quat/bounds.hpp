#pragma once

#include "quat/qmatrix.hpp"

#include <cstdint>
#include <vector>

namespace quat {

// Singular values of A split after the k-th one.
class SpectrumTail {
public:
    // sigma must be descending and nonnegative, 1 <= k < sigma.size().
    SpectrumTail(std::vector<double> sigma, index_t k);

    const std::vector<double>& sigma() const noexcept { return sigma_; }
    index_t k() const noexcept { return k_; }
    index_t size() const noexcept { return static_cast<index_t>(sigma_.size()); }

    double sigma_next() const { return sigma_[static_cast<std::size_t>(k_)]; }  // sigma_{k+1}
    // (sum_{j>k} sigma_j^(2 power))^(1/2); power 1 is the tail energy.
    double tail_energy(int power = 1) const;

private:
    std::vector<double> sigma_;
    index_t k_;
};

// Rank-(k+p) approximation error bounds for the power-scheme-free algorithm
// unless noted. All throw InvalidArgument for p < 1 or k + p > sigma.size().
double expected_fro_bound(const SpectrumTail& tail, index_t p);
// q = 0 is the plain bound; q > 0 substitutes sigma^(2q+1) and takes the
// (2q+1)-th root.
double expected_spec_bound(const SpectrumTail& tail, index_t p, int q = 0);

// eta_{k,p} = e sqrt(4k+4p+2) / (4p+4).
double eta(index_t k, index_t p);

struct DeviationBounds {
    double fro = 0.0;
    double spec = 0.0;
    double failure_probability = 0.0;  // 2 t^(-4p) + exp(-u^2/2)
};

// Requires t >= 1, u >= 0.
DeviationBounds deviation_bounds(const SpectrumTail& tail, index_t p, double u, double t);

// (1 + 18 sqrt(1 + k/(p+1))) sigma_{k+1} + 6 sqrt(4k+4p+2)/(p+1) * tail,
// holding except with probability simple_deviation_failure(p) = 3 e^(-4p).
double simple_spec_deviation(const SpectrumTail& tail, index_t p);
double simple_deviation_failure(index_t p);

struct BoundReport {
    index_t k = 0, p = 0;
    int q = 0;
    double u = 0.0, t = 0.0;
    double expectation_fro = 0.0;
    double expectation_spec = 0.0;  // power bound at q
    double deviation_fro = 0.0;
    double deviation_spec = 0.0;
    double deviation_failure = 0.0;
    double simple_deviation_spec = 0.0;
    double simple_deviation_failure = 0.0;
};

BoundReport evaluate_bounds(const SpectrumTail& tail, index_t p, int q, double u, double t);

// Quaternion Gaussian m x n matrix G (m <= n).
struct PinvStats {
    double efro2 = 0.0;     // E ||G^+||_F^2 = m / (4(n-m)+2)
    double espec_ub = 0.0;  // E ||G^+||_2 <= e sqrt(4n+2) / (2n-2m+2)
};
PinvStats pinv_stats(index_t m, index_t n);

// P{||G^+||_F^2 > fro_threshold} <= fro_cap and P{||G^+||_2 > spec_threshold}
// <= spec_cap. Caps are clamped to 1. The Frobenius statement needs n - m >= 1.
struct PinvTail {
    double fro_threshold = 0.0;
    double fro_cap = 0.0;
    double spec_threshold = 0.0;
    double spec_cap = 0.0;
};
PinvTail pinv_tail_probs(index_t m, index_t n, double t);

struct MonteCarloEstimate {
    double mean = 0.0;
    double stderr_ = 0.0;
    long trials = 0;
};

// Per-sample ||G^+||_F^2 and ||G^+||_2 from the eigenvalues of G G^*.
struct PinvSample {
    double fro2 = 0.0;
    double spec = 0.0;
};

struct PinvSamples {
    std::vector<PinvSample> samples;  // indexed by trial
    long resampled = 0;               // draws with a singular Gram matrix (probability zero)
};

PinvSamples sample_pinv_norms(index_t m, index_t n, long trials, std::uint64_t seed);

// Mean of ||G^+||_F^2 with its standard error. Requires m <= n - 1 so the
// variance is finite.
MonteCarloEstimate validate_pinv_fro(index_t m, index_t n, long trials, std::uint64_t seed);
MonteCarloEstimate validate_pinv_spec(index_t m, index_t n, long trials, std::uint64_t seed);

struct ScaledNormEstimate {
    MonteCarloEstimate fro2;     // compare with 4 ||S||_F^2 ||T||_F^2
    MonteCarloEstimate spec;     // compare with scaled_spec_bound(S, T)
};

// Monte Carlo means of ||S G T||_F^2 and ||S G T||_2 for Gaussian G of shape
// S.cols() x T.rows().
ScaledNormEstimate validate_scaled_norms(const QMatrix& S, const QMatrix& T, long trials, std::uint64_t seed);
double scaled_fro2_expectation(const QMatrix& S, const QMatrix& T);
double scaled_spec_bound(const QMatrix& S, const QMatrix& T);

// Mean and standard error of a sample, summed pairwise.
MonteCarloEstimate summarize(const std::vector<double>& values);

} // namespace quat

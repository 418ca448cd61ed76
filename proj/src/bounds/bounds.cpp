#include "quat/bounds.hpp"

#include "quat/decomp.hpp"
#include "quat/errors.hpp"
#include "quat/execution.hpp"
#include "quat/kernels.hpp"
#include "quat/randomized.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace quat {

namespace {

constexpr double e_ = std::numbers::e;

void check_p(const SpectrumTail& tail, index_t p, const char* who) {
    if (p < 1) throw InvalidArgument(std::string(who) + ": p must be >= 1");
    if (tail.k() + p > tail.size())
        throw InvalidArgument(std::string(who) + ": k + p exceeds the spectrum length");
}

void check_shape(index_t m, index_t n, const char* who) {
    if (m < 1 || n < m) throw InvalidArgument(std::string(who) + ": need 1 <= m <= n");
}

double dk(index_t k) { return static_cast<double>(k); }

} // namespace

SpectrumTail::SpectrumTail(std::vector<double> sigma, index_t k) : sigma_(std::move(sigma)), k_(k) {
    if (k_ < 1 || k_ >= size()) throw InvalidArgument("SpectrumTail: need 1 <= k < number of singular values");
    if (!std::is_sorted(sigma_.begin(), sigma_.end(), std::greater<>()) || sigma_.back() < 0.0)
        throw InvalidArgument("SpectrumTail: spectrum must be descending and nonnegative");
}

double SpectrumTail::tail_energy(int power) const {
    std::vector<double> sq;
    sq.reserve(sigma_.size() - static_cast<std::size_t>(k_));
    for (std::size_t j = static_cast<std::size_t>(k_); j < sigma_.size(); ++j)
        sq.push_back(std::pow(sigma_[j], 2.0 * power));
    return std::sqrt(kernels::pairwise_sum(sq));
}

double expected_fro_bound(const SpectrumTail& tail, index_t p) {
    check_p(tail, p, "expected_fro_bound");
    const double k = dk(tail.k()), pp = dk(p);
    return std::sqrt(1.0 + 4.0 * k / (4.0 * pp + 2.0)) * tail.tail_energy();
}

double expected_spec_bound(const SpectrumTail& tail, index_t p, int q) {
    check_p(tail, p, "expected_spec_bound");
    if (q < 0) throw InvalidArgument("expected_spec_bound: q must be >= 0");
    const double k = dk(tail.k()), pp = dk(p);
    const double c1 = 1.0 + 3.0 * std::sqrt(k / (4.0 * pp + 2.0));
    const double c2 = 3.0 * e_ * std::sqrt(4.0 * k + 4.0 * pp + 2.0) / (2.0 * pp + 2.0);
    if (q == 0) return c1 * tail.sigma_next() + c2 * tail.tail_energy();
    const int r = 2 * q + 1;
    const double inner = c1 * std::pow(tail.sigma_next(), r) + c2 * tail.tail_energy(r);
    return std::pow(inner, 1.0 / r);
}

double eta(index_t k, index_t p) {
    return e_ * std::sqrt(4.0 * dk(k) + 4.0 * dk(p) + 2.0) / (4.0 * dk(p) + 4.0);
}

DeviationBounds deviation_bounds(const SpectrumTail& tail, index_t p, double u, double t) {
    check_p(tail, p, "deviation_bounds");
    if (!(t >= 1.0) || !(u >= 0.0)) throw InvalidArgument("deviation_bounds: need t >= 1 and u >= 0");
    const double k = dk(tail.k()), pp = dk(p);
    const double s = tail.sigma_next(), f = tail.tail_energy(), h = eta(tail.k(), p);
    const double root = std::sqrt(3.0 * k / (pp + 1.0));

    DeviationBounds out;
    out.fro = (1.0 + t * root) * f + u * t * h * s;
    out.spec = (1.0 + 1.5 * t * root + u * t * h) * s + 3.0 * t * h * f;
    out.failure_probability = 2.0 * std::pow(t, -4.0 * pp) + std::exp(-u * u / 2.0);
    return out;
}

double simple_spec_deviation(const SpectrumTail& tail, index_t p) {
    check_p(tail, p, "simple_spec_deviation");
    const double k = dk(tail.k()), pp = dk(p);
    return (1.0 + 18.0 * std::sqrt(1.0 + k / (pp + 1.0))) * tail.sigma_next() +
           6.0 * std::sqrt(4.0 * k + 4.0 * pp + 2.0) / (pp + 1.0) * tail.tail_energy();
}

double simple_deviation_failure(index_t p) {
    if (p < 1) throw InvalidArgument("simple_deviation_failure: p must be >= 1");
    return 3.0 * std::exp(-4.0 * dk(p));
}

BoundReport evaluate_bounds(const SpectrumTail& tail, index_t p, int q, double u, double t) {
    BoundReport r;
    r.k = tail.k();
    r.p = p;
    r.q = q;
    r.u = u;
    r.t = t;
    r.expectation_fro = expected_fro_bound(tail, p);
    r.expectation_spec = expected_spec_bound(tail, p, q);
    const DeviationBounds d = deviation_bounds(tail, p, u, t);
    r.deviation_fro = d.fro;
    r.deviation_spec = d.spec;
    r.deviation_failure = d.failure_probability;
    r.simple_deviation_spec = simple_spec_deviation(tail, p);
    r.simple_deviation_failure = simple_deviation_failure(p);
    return r;
}

PinvStats pinv_stats(index_t m, index_t n) {
    check_shape(m, n, "pinv_stats");
    const double dm = dk(m), dn = dk(n);
    return {dm / (4.0 * (dn - dm) + 2.0), e_ * std::sqrt(4.0 * dn + 2.0) / (2.0 * dn - 2.0 * dm + 2.0)};
}

PinvTail pinv_tail_probs(index_t m, index_t n, double t) {
    check_shape(m, n, "pinv_tail_probs");
    if (n - m < 1) throw InvalidArgument("pinv_tail_probs: need n - m >= 1");
    if (!(t >= 1.0)) throw InvalidArgument("pinv_tail_probs: need t >= 1");
    const double dm = dk(m), dn = dk(n), gap = dn - dm;
    PinvTail out;
    out.fro_threshold = 3.0 * dm * t / (4.0 * (gap + 1.0));
    out.fro_cap = std::min(1.0, std::pow(t, -2.0 * gap));
    out.spec_threshold = e_ * std::sqrt(4.0 * dn + 2.0) * t / (4.0 * (gap + 1.0));
    const double pi3 = std::pow(std::numbers::pi, -3.0);
    out.spec_cap = std::min(1.0, pi3 / (4.0 * (gap + 1.0) * (2.0 * gap + 3.0)) * std::pow(t, -4.0 * (gap + 1.0)));
    return out;
}

MonteCarloEstimate summarize(const std::vector<double>& values) {
    MonteCarloEstimate out;
    out.trials = static_cast<long>(values.size());
    if (values.empty()) return out;
    const double n = static_cast<double>(values.size());
    out.mean = kernels::pairwise_sum(values) / n;
    if (values.size() > 1) {
        std::vector<double> dev(values.size());
        for (std::size_t i = 0; i < values.size(); ++i) dev[i] = (values[i] - out.mean) * (values[i] - out.mean);
        out.stderr_ = std::sqrt(kernels::pairwise_sum(dev) / (n - 1.0) / n);
    }
    return out;
}

PinvSamples sample_pinv_norms(index_t m, index_t n, long trials, std::uint64_t seed) {
    check_shape(m, n, "sample_pinv_norms");
    if (trials < 1) throw InvalidArgument("sample_pinv_norms: trials must be >= 1");

    PinvSamples out;
    out.samples.resize(static_cast<std::size_t>(trials));
    std::vector<long> redraws(static_cast<std::size_t>(trials), 0);
    const int threads = kernel_threads();

    // Redraws for trial i continue along its own stream, so the result does
    // not depend on scheduling.
#pragma omp parallel for schedule(dynamic) num_threads(threads) if (threads > 1)
    for (long i = 0; i < trials; ++i) {
        const auto ui = static_cast<std::uint64_t>(i);
        for (std::uint64_t draw = 0;; ++draw) {
            const std::uint64_t s = draw == 0 ? derive_seed(seed, ui) : derive_seed(derive_seed(seed, ui), draw);
            const QMatrix G = sample_gaussian(m, n, s);
            const std::vector<double> lambda = eigenvalues_hermitian(mat_mul(G, adjoint(G)));
            const double lmin = lambda.back();
            if (!(lmin > 0.0)) {
                ++redraws[static_cast<std::size_t>(i)];
                continue;
            }
            std::vector<double> inv(lambda.size());
            for (std::size_t j = 0; j < lambda.size(); ++j) inv[j] = 1.0 / lambda[j];
            out.samples[static_cast<std::size_t>(i)] = {kernels::pairwise_sum(inv), 1.0 / std::sqrt(lmin)};
            break;
        }
    }
    for (long r : redraws) out.resampled += r;
    return out;
}

MonteCarloEstimate validate_pinv_fro(index_t m, index_t n, long trials, std::uint64_t seed) {
    check_shape(m, n, "validate_pinv_fro");
    if (n - m < 1) throw InvalidArgument("validate_pinv_fro: need n - m >= 1 for a finite variance");
    const PinvSamples s = sample_pinv_norms(m, n, trials, seed);
    std::vector<double> v;
    v.reserve(s.samples.size());
    for (const PinvSample& x : s.samples) v.push_back(x.fro2);
    return summarize(v);
}

MonteCarloEstimate validate_pinv_spec(index_t m, index_t n, long trials, std::uint64_t seed) {
    const PinvSamples s = sample_pinv_norms(m, n, trials, seed);
    std::vector<double> v;
    v.reserve(s.samples.size());
    for (const PinvSample& x : s.samples) v.push_back(x.spec);
    return summarize(v);
}

double scaled_fro2_expectation(const QMatrix& S, const QMatrix& T) {
    return 4.0 * frobenius_norm_squared(S) * frobenius_norm_squared(T);
}

double scaled_spec_bound(const QMatrix& S, const QMatrix& T) {
    return 3.0 * (spectral_norm(S) * frobenius_norm(T) + frobenius_norm(S) * spectral_norm(T));
}

ScaledNormEstimate validate_scaled_norms(const QMatrix& S, const QMatrix& T, long trials, std::uint64_t seed) {
    if (trials < 1) throw InvalidArgument("validate_scaled_norms: trials must be >= 1");
    if (S.cols() < 1 || T.rows() < 1) throw InvalidArgument("validate_scaled_norms: empty operand");

    std::vector<double> fro2(static_cast<std::size_t>(trials)), spec(static_cast<std::size_t>(trials));
    const int threads = kernel_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads) if (threads > 1)
    for (long i = 0; i < trials; ++i) {
        const QMatrix G = sample_gaussian(S.cols(), T.rows(), derive_seed(seed, static_cast<std::uint64_t>(i)));
        const QMatrix M = mat_mul(mat_mul(S, G), T);
        fro2[static_cast<std::size_t>(i)] = frobenius_norm_squared(M);
        spec[static_cast<std::size_t>(i)] = singular_values(M).front();
    }
    return {summarize(fro2), summarize(spec)};
}

} // namespace quat

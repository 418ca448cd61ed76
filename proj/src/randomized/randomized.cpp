#include "quat/randomized.hpp"

#include "quat/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

namespace quat {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

void truncate(LowRankApprox& r, index_t k) {
    if (static_cast<index_t>(r.S.size()) <= k) return;
    r.S.resize(static_cast<std::size_t>(k));
    r.U = leading_columns(r.U, k);
    r.V = leading_columns(r.V, k);
}

std::optional<double> residual_estimate(const QOperator& A, const QMatrix& B) {
    const auto* dense = dynamic_cast<const DenseOperator*>(&A);
    if (!dense) return std::nullopt;
    const double gap = frobenius_norm_squared(dense->matrix()) - frobenius_norm_squared(B);
    return std::sqrt(std::max(0.0, gap));
}

// B = Q^* A through A^* Q, so only products with the operator are needed.
QMatrix project(const QOperator& A, const QMatrix& Q) { return adjoint(A.apply_adjoint(Q)); }

} // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t trial) {
    return splitmix64(splitmix64(seed) ^ splitmix64(trial + 0x632be59bd9b4e019ULL));
}

QMatrix sample_gaussian(index_t n, index_t l, std::uint64_t seed) {
    if (n < 1 || l < 1) throw InvalidArgument("sample_gaussian: dimensions must be positive");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    QMatrix G(n, l);
    for (double& v : G.storage()) v = normal(rng);
    return G;
}

void validate(const RandConfig& cfg, index_t m, index_t n) {
    if (cfg.k < 1) throw InvalidArgument("target rank k must be at least 1");
    if (cfg.p < 1) throw InvalidArgument("oversampling p must be at least 1");
    if (cfg.q < 0) throw InvalidArgument("power exponent q must be nonnegative");
    if (cfg.k + cfg.p > std::min(m, n))
        throw InvalidArgument("k + p = " + std::to_string(cfg.k + cfg.p) + " exceeds min(m, n) = " +
                              std::to_string(std::min(m, n)));
}

QMatrix orthonormalize(const QMatrix& Y, Ortho ortho) {
    return ortho == Ortho::qmgs ? qmgs(Y).Q : householder_qr(Y, true).Q;
}

QMatrix randomized_range(const QOperator& A, const RandConfig& cfg) {
    validate(cfg, A.rows(), A.cols());
    const QMatrix omega = sample_gaussian(A.cols(), cfg.l(), cfg.seed);
    QMatrix Y = A.apply(omega);
    for (int i = 0; i < cfg.q; ++i) {
        if (cfg.stabilized_power) Y = orthonormalize(Y, cfg.ortho);
        QMatrix Yhat = A.apply_adjoint(Y);
        if (cfg.stabilized_power) Yhat = orthonormalize(Yhat, cfg.ortho);
        Y = A.apply(Yhat);
    }
    return orthonormalize(Y, cfg.ortho);
}

QMatrix randomized_range(const QMatrix& A, const RandConfig& cfg) {
    return randomized_range(DenseOperator(A), cfg);
}

LowRankApprox randsvdQ(const QOperator& A, const RandConfig& cfg) {
    const QMatrix Q = randomized_range(A, cfg);
    const QMatrix B = project(A, Q);
    QsvdResult svd = qsvd(B);
    LowRankApprox out;
    out.U = mat_mul(Q, svd.U);
    out.S = std::move(svd.S);
    out.V = std::move(svd.V);
    out.residual_fro = residual_estimate(A, B);
    if (!cfg.keep_all) truncate(out, cfg.k);
    return out;
}

LowRankApprox randsvdQ(const QMatrix& A, const RandConfig& cfg) { return randsvdQ(DenseOperator(A), cfg); }

LowRankApprox prandsvdQ(const QOperator& A, const RandConfig& cfg) {
    const QMatrix Q = randomized_range(A, cfg);
    const QMatrix Bstar = A.apply_adjoint(Q);  // n x l
    const QrResult qr = cfg.ortho == Ortho::qmgs ? qmgs(Bstar) : householder_qr(Bstar, true);
    // B^* = Q1 R1, so B = R1^* Q1^*; with R1 = T S Z^*, B = Z S (Q1 T)^*.
    QsvdResult small = qsvd(qr.R);
    LowRankApprox out;
    out.U = mat_mul(Q, small.V);
    out.S = std::move(small.S);
    out.V = mat_mul(qr.Q, small.U);
    out.residual_fro = residual_estimate(A, Bstar);
    if (!cfg.keep_all) truncate(out, cfg.k);
    return out;
}

LowRankApprox prandsvdQ(const QMatrix& A, const RandConfig& cfg) { return prandsvdQ(DenseOperator(A), cfg); }

namespace {

// Eigenpairs of the small Hermitian B lifted through Q, keeping the k of
// largest magnitude in descending order of value.
EigResult lift_dominant(const QMatrix& Q, const QMatrix& B, index_t k) {
    const EigResult small = eig_hermitian(0.5 * (B + adjoint(B)), 1e-8);
    const index_t l = static_cast<index_t>(small.Lambda.size());
    std::vector<index_t> order(static_cast<std::size_t>(l));
    std::iota(order.begin(), order.end(), index_t{0});
    std::stable_sort(order.begin(), order.end(), [&](index_t a, index_t b) {
        return std::abs(small.Lambda[static_cast<std::size_t>(a)]) > std::abs(small.Lambda[static_cast<std::size_t>(b)]);
    });
    order.resize(static_cast<std::size_t>(std::min(k, l)));
    std::sort(order.begin(), order.end());  // eigenvalues are stored descending already

    QMatrix Z(l, static_cast<index_t>(order.size()));
    EigResult out;
    for (std::size_t c = 0; c < order.size(); ++c) {
        out.Lambda.push_back(small.Lambda[static_cast<std::size_t>(order[c])]);
        for (index_t i = 0; i < l; ++i) Z.set(i, static_cast<index_t>(c), small.V(i, order[c]));
    }
    out.V = mat_mul(Q, Z);
    return out;
}

} // namespace

EigResult randeigQ(const QMatrix& A, const RandConfig& cfg, double hermitian_tol) {
    if (A.rows() != A.cols()) throw DimensionMismatch("randeigQ: matrix must be square");
    require_hermitian(A, hermitian_tol, "randeigQ");
    const QMatrix Q = randomized_range(A, cfg);
    const QMatrix B = adjoint_mul(Q, mat_mul(A, Q));
    return lift_dominant(Q, B, cfg.k);
}

EigResult single_pass_hermitian(const QOperator& A, const RandConfig& cfg, double max_condition) {
    if (A.rows() != A.cols()) throw DimensionMismatch("single_pass_hermitian: operator must be square");
    if (cfg.q != 0) throw InvalidArgument("single_pass_hermitian: power scheme needs more than one pass (q must be 0)");
    validate(cfg, A.rows(), A.cols());

    const QMatrix omega = sample_gaussian(A.cols(), cfg.l(), cfg.seed);
    const QMatrix Y = A.apply(omega);
    const QMatrix Q = orthonormalize(Y, cfg.ortho);
    const QMatrix M = adjoint_mul(Q, omega);  // l x l
    const QMatrix R = adjoint_mul(Q, Y);

    // B M = R  =>  B = R M^{-1} = R V S^{-1} U^* with M = U S V^*.
    const QsvdResult m = qsvd(M);
    const double smax = m.S.front(), smin = m.S.back();
    const double cond = smin > 0.0 ? smax / smin : std::numeric_limits<double>::infinity();
    if (!(cond <= max_condition))
        throw IllConditioned("single_pass_hermitian: Q^* Omega is ill-conditioned", cond);
    std::vector<double> inv(m.S.size());
    for (std::size_t i = 0; i < inv.size(); ++i) inv[i] = 1.0 / m.S[i];
    const QMatrix B = mat_mul(mat_mul(R, scale_columns(m.V, inv)), adjoint(m.U));
    return lift_dominant(Q, B, cfg.k);
}

EigResult single_pass_hermitian(const QMatrix& A, const RandConfig& cfg, double max_condition,
                                double hermitian_tol) {
    require_hermitian(A, hermitian_tol, "single_pass_hermitian");
    return single_pass_hermitian(DenseOperator(A), cfg, max_condition);
}

} // namespace quat

#include "quat/decomp.hpp"

#include "quat/errors.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace quat {

namespace {

// Real m x k block embedded as the scalar part of an M x k quaternion matrix
// (rows beyond m are zero).
QMatrix embed_real(const RealMatrix& X, index_t M, index_t k) {
    QMatrix out(M, k);
    for (index_t i = 0; i < X.rows(); ++i)
        for (index_t j = 0; j < k; ++j) out.at(0, i, j) = X(i, j);
    return out;
}

QsvdResult tall_qsvd(const QMatrix& A, index_t k, bool want_vectors) {
    const index_t m = A.rows(), n = A.cols();
    const Bidiagonalization bd = bidiagonalize(A);
    const BidiagSvd svd = bidiag_svd(bd.diagonal(), bd.superdiagonal(), want_vectors);
    QsvdResult out;
    out.S.assign(svd.s.begin(), svd.s.begin() + k);
    if (want_vectors) {
        out.U = bd.apply_P(embed_real(svd.U, m, k));
        out.V = bd.apply_W(embed_real(svd.V, n, k));
    }
    return out;
}

QsvdResult any_qsvd(const QMatrix& A, index_t k, bool want_vectors) {
    const index_t r = std::min(A.rows(), A.cols());
    if (k < 0 || k > r) throw InvalidArgument("qsvd_truncate: k must lie in [0, min(m, n)]");
    if (A.rows() >= A.cols()) return tall_qsvd(A, k, want_vectors);
    // Wide input: decompose A^* and swap the factors.
    QsvdResult t = tall_qsvd(adjoint(A), k, want_vectors);
    std::swap(t.U, t.V);
    return t;
}

} // namespace

std::vector<double> Bidiagonalization::diagonal() const {
    const index_t r = std::min(D.rows(), D.cols());
    std::vector<double> d(static_cast<std::size_t>(r));
    for (index_t i = 0; i < r; ++i) d[static_cast<std::size_t>(i)] = D(i, i);
    return d;
}

std::vector<double> Bidiagonalization::superdiagonal() const {
    const index_t r = std::min(D.rows(), D.cols());
    const index_t len = D.rows() < D.cols() ? r : std::max<index_t>(r - 1, 0);
    std::vector<double> e(static_cast<std::size_t>(len));
    for (index_t i = 0; i < len; ++i) e[static_cast<std::size_t>(i)] = D(i, i + 1);
    return e;
}

QMatrix Bidiagonalization::apply_P(QMatrix X) const {
    if (X.rows() != D.rows()) throw DimensionMismatch("apply_P: row count mismatch");
    apply_reflectors_adjoint(left, 0, X);
    return X;
}

QMatrix Bidiagonalization::apply_W(QMatrix X) const {
    if (X.rows() != D.cols()) throw DimensionMismatch("apply_W: row count mismatch");
    apply_reflectors_adjoint(right, 1, X);
    return X;
}

QMatrix Bidiagonalization::P() const { return apply_P(QMatrix::identity(D.rows())); }
QMatrix Bidiagonalization::W() const { return apply_W(QMatrix::identity(D.cols())); }

Bidiagonalization bidiagonalize(const QMatrix& B) {
    const index_t m = B.rows(), n = B.cols();
    const index_t steps = std::min(m, n);
    QMatrix work = B;
    Bidiagonalization out;
    out.D = RealMatrix(m, n);
    out.left.reserve(static_cast<std::size_t>(steps));

    for (index_t j = 0; j < steps; ++j) {
        std::vector<Quaternion> u(static_cast<std::size_t>(m - j));
        for (index_t i = j; i < m; ++i) u[static_cast<std::size_t>(i - j)] = work(i, j);
        Reflector h = householder_h0(u);
        apply_left(h, work, j, j + 1);
        out.D(j, j) = h.beta;
        out.left.push_back(std::move(h));

        if (j + 1 < n) {
            // Row j from column j+1 on: x H0(x^*)^* = ||x|| e_1^T.
            std::vector<Quaternion> x(static_cast<std::size_t>(n - j - 1));
            for (index_t c = j + 1; c < n; ++c) x[static_cast<std::size_t>(c - j - 1)] = conj(work(j, c));
            Reflector g = householder_h0(x);
            apply_right_adjoint(g, work, j + 1, j + 1);
            out.D(j, j + 1) = g.beta;
            out.right.push_back(std::move(g));
        }
    }
    return out;
}

QsvdResult qsvd(const QMatrix& A) { return any_qsvd(A, std::min(A.rows(), A.cols()), true); }

QsvdResult qsvd_truncate(const QMatrix& A, index_t k) { return any_qsvd(A, k, true); }

std::vector<double> singular_values(const QMatrix& A) {
    return any_qsvd(A, std::min(A.rows(), A.cols()), false).S;
}

namespace {

struct Tridiagonalization {
    std::vector<double> d, e;
    std::vector<Reflector> hs;  // hs[j] acts on rows/columns j+1..n-1
};

Tridiagonalization tridiagonalize(const QMatrix& A, double rel_tol) {
    if (A.rows() != A.cols()) throw DimensionMismatch("eig_hermitian: matrix must be square");
    require_hermitian(A, rel_tol, "eig_hermitian");
    const index_t n = A.rows();
    QMatrix work = 0.5 * (A + adjoint(A));

    Tridiagonalization t;
    t.d.resize(static_cast<std::size_t>(n));
    t.e.resize(static_cast<std::size_t>(std::max<index_t>(n - 1, 0)));
    for (index_t j = 0; j + 1 < n; ++j) {
        std::vector<Quaternion> u(static_cast<std::size_t>(n - j - 1));
        for (index_t i = j + 1; i < n; ++i) u[static_cast<std::size_t>(i - j - 1)] = work(i, j);
        Reflector h = householder_h0(u);
        apply_left(h, work, j + 1, j);
        apply_right_adjoint(h, work, j + 1, j);
        t.d[static_cast<std::size_t>(j)] = work(j, j).w;
        t.e[static_cast<std::size_t>(j)] = h.beta;
        t.hs.push_back(std::move(h));
    }
    if (n > 0) t.d[static_cast<std::size_t>(n - 1)] = work(n - 1, n - 1).w;
    return t;
}

} // namespace

EigResult eig_hermitian(const QMatrix& A, double rel_tol) {
    Tridiagonalization t = tridiagonalize(A, rel_tol);
    const index_t n = A.rows();
    TridiagEig te = tridiag_eig(std::move(t.d), std::move(t.e), true);
    EigResult out;
    out.Lambda = std::move(te.lambda);
    out.V = embed_real(te.Z, n, n);
    apply_reflectors_adjoint(t.hs, 1, out.V);
    return out;
}

std::vector<double> eigenvalues_hermitian(const QMatrix& A, double rel_tol) {
    Tridiagonalization t = tridiagonalize(A, rel_tol);
    return tridiag_eig(std::move(t.d), std::move(t.e), false).lambda;
}

double spectral_norm(const QMatrix& A, const SpectralNormOptions& options) {
    const index_t m = A.rows(), n = A.cols();
    if (A.empty()) return 0.0;
    if (std::min(m, n) <= options.dense_threshold) return singular_values(A).front();

    std::mt19937_64 rng(options.seed);
    std::normal_distribution<double> normal;
    QMatrix x(n, 1);
    for (double& v : x.storage()) v = normal(rng);
    x *= 1.0 / frobenius_norm(x);

    // sigma^2 is estimated by the Rayleigh quotient ||A x||^2 of A^* A.
    double sigma = 0.0;
    for (int it = 0; it < options.max_iterations; ++it) {
        const QMatrix y = mat_mul(A, x);
        const double next = frobenius_norm(y);
        if (next == 0.0) return 0.0;
        if (it > 0 && std::abs(next - sigma) <= options.tol * next) return next;
        sigma = next;
        x = adjoint_mul(A, y);
        x *= 1.0 / frobenius_norm(x);
    }
    throw NoConvergence("spectral_norm: power iteration did not converge", sigma);
}

} // namespace quat

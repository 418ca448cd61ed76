#pragma once

#include "quat/householder.hpp"
#include "quat/qmatrix.hpp"
#include "quat/real_kernels.hpp"

#include <vector>

namespace quat {

// A = U diag(S) V^*, S descending and nonnegative.
struct QsvdResult {
    QMatrix U;              // m x r
    std::vector<double> S;  // r
    QMatrix V;              // n x r
};

// A = V diag(Lambda) V^*, Lambda descending.
struct EigResult {
    QMatrix V;
    std::vector<double> Lambda;
};

// P^* B W = D with D real upper bidiagonal (nonnegative diagonal and
// superdiagonal). The reflectors are kept so that callers needing only a few
// columns of P or W can apply them to a thin block instead of forming the
// full unitary factors.
struct Bidiagonalization {
    RealMatrix D;                     // m x n
    std::vector<Reflector> left;      // left[j] acts on rows j..m-1
    std::vector<Reflector> right;     // right[j] acts on columns j+1..n-1

    std::vector<double> diagonal() const;
    std::vector<double> superdiagonal() const;  // min(m,n) - 1 entries (min(m,n) if m < n)

    // P X and W X for X with m (resp. n) rows.
    QMatrix apply_P(QMatrix X) const;
    QMatrix apply_W(QMatrix X) const;
    QMatrix P() const;
    QMatrix W() const;
};

Bidiagonalization bidiagonalize(const QMatrix& B);

QsvdResult qsvd(const QMatrix& A);
// First k triplets; only k columns of U and V are ever formed.
QsvdResult qsvd_truncate(const QMatrix& A, index_t k);
// Singular values only (no vector accumulation).
std::vector<double> singular_values(const QMatrix& A);

// Hermitian eigendecomposition. Throws NotHermitian when
// ||A - A^*||_F > rel_tol * ||A||_F; the input is symmetrized before use.
EigResult eig_hermitian(const QMatrix& A, double rel_tol = 1e-10);
std::vector<double> eigenvalues_hermitian(const QMatrix& A, double rel_tol = 1e-10);

struct SpectralNormOptions {
    double tol = 1e-10;            // relative change between power iterates
    int max_iterations = 500;
    index_t dense_threshold = 64;  // min(m,n) at or below this uses the QSVD
    unsigned long long seed = 0x5eed;
};

// Largest singular value. Throws NoConvergence (best_estimate() holds the
// last iterate) if the power iteration stalls.
double spectral_norm(const QMatrix& A, const SpectralNormOptions& options = {});

} // namespace quat

#pragma once

// Shared helpers for the test binaries. Eigen is the independent oracle: it
// never appears in the library, only here.

#include "quat/qmatrix.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

namespace quat::test {

inline QMatrix random_qmatrix(index_t m, index_t n, std::mt19937_64& rng) {
    std::normal_distribution<double> normal;
    QMatrix A(m, n);
    for (double& v : A.storage()) v = normal(rng);
    return A;
}

inline Quaternion random_quaternion(std::mt19937_64& rng) {
    std::normal_distribution<double> normal;
    const double w = normal(rng), x = normal(rng), y = normal(rng), z = normal(rng);
    return {w, x, y, z};
}

inline Eigen::MatrixXd to_eigen(const RealMatrix& A) {
    Eigen::MatrixXd E(A.rows(), A.cols());
    for (index_t i = 0; i < A.rows(); ++i)
        for (index_t j = 0; j < A.cols(); ++j) E(i, j) = A(i, j);
    return E;
}

inline RealMatrix from_eigen(const Eigen::MatrixXd& E) {
    RealMatrix A(E.rows(), E.cols());
    for (index_t i = 0; i < A.rows(); ++i)
        for (index_t j = 0; j < A.cols(); ++j) A(i, j) = E(i, j);
    return A;
}

// Entry-by-entry Hamilton products, no column representation involved.
inline QMatrix naive_mul(const QMatrix& A, const QMatrix& B) {
    QMatrix C(A.rows(), B.cols());
    for (index_t i = 0; i < A.rows(); ++i)
        for (index_t j = 0; j < B.cols(); ++j) {
            Quaternion s;
            for (index_t l = 0; l < A.cols(); ++l) s += A(i, l) * B(l, j);
            C.set(i, j, s);
        }
    return C;
}

inline double max_abs_diff(const QMatrix& A, const QMatrix& B) {
    double d = 0.0;
    for (std::size_t i = 0; i < A.storage().size(); ++i)
        d = std::max(d, std::abs(A.storage()[i] - B.storage()[i]));
    return d;
}

// Singular values of the real counterpart, sorted descending, with the
// fourfold multiplicity collapsed: values are grouped in blocks of four
// after checking that each block agrees to group_tol * sigma_1.
inline std::vector<double> counterpart_singular_values(const QMatrix& A, bool* grouped = nullptr,
                                                       double group_tol = 1e-8) {
    const Eigen::MatrixXd U = to_eigen(real_counterpart(A));
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(U);
    std::vector<double> all(svd.singularValues().data(), svd.singularValues().data() + svd.singularValues().size());
    std::sort(all.rbegin(), all.rend());
    std::vector<double> out;
    bool ok = all.size() % 4 == 0;
    const double scale = all.empty() ? 0.0 : all.front();
    for (std::size_t i = 0; i + 3 < all.size(); i += 4) {
        if (all[i] - all[i + 3] > group_tol * scale) ok = false;
        out.push_back(0.25 * (all[i] + all[i + 1] + all[i + 2] + all[i + 3]));
    }
    if (grouped) *grouped = ok;
    return out;
}

inline double orthogonality_defect(const QMatrix& Q) {
    return frobenius_norm(adjoint_mul(Q, Q) - QMatrix::identity(Q.cols()));
}

inline double spectral_norm_oracle(const QMatrix& A) {
    if (A.empty()) return 0.0;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(to_eigen(real_counterpart(A)));
    return svd.singularValues()(0);
}

} // namespace quat::test

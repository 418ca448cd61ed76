#include "quat/qmatrix.hpp"

#include "quat/errors.hpp"
#include "quat/kernels.hpp"

#include <cmath>
#include <string>

namespace quat {

namespace {

struct Block {
    int part;
    double sign;
};

// Block (r, s) of the real counterpart.
constexpr Block counterpart_block[4][4] = {
    {{0, 1.0}, {1, -1.0}, {2, -1.0}, {3, -1.0}},
    {{1, 1.0}, {0, 1.0}, {3, -1.0}, {2, 1.0}},
    {{2, 1.0}, {3, 1.0}, {0, 1.0}, {1, -1.0}},
    {{3, 1.0}, {2, -1.0}, {1, 1.0}, {0, 1.0}},
};

std::string shape(const QMatrix& A) {
    return std::to_string(A.rows()) + "x" + std::to_string(A.cols());
}

} // namespace

QMatrix::QMatrix(index_t rows, index_t cols)
    : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(4 * rows * cols), 0.0) {
    if (rows < 0 || cols < 0) throw InvalidArgument("QMatrix: negative dimension");
}

QMatrix QMatrix::identity(index_t n) {
    QMatrix I(n, n);
    for (index_t i = 0; i < n; ++i) I.at(0, i, i) = 1.0;
    return I;
}

QMatrix QMatrix::from_parts(const RealMatrix& p0, const RealMatrix& p1, const RealMatrix& p2,
                            const RealMatrix& p3) {
    const RealMatrix* parts[4] = {&p0, &p1, &p2, &p3};
    for (const RealMatrix* p : parts)
        if (p->rows() != p0.rows() || p->cols() != p0.cols())
            throw DimensionMismatch("QMatrix::from_parts: parts differ in shape");
    QMatrix A(p0.rows(), p0.cols());
    for (int p = 0; p < 4; ++p)
        for (index_t i = 0; i < A.rows(); ++i)
            for (index_t j = 0; j < A.cols(); ++j) A.at(p, i, j) = (*parts[p])(i, j);
    return A;
}

QMatrix QMatrix::from_real(const RealMatrix& p0) {
    QMatrix A(p0.rows(), p0.cols());
    for (index_t i = 0; i < A.rows(); ++i)
        for (index_t j = 0; j < A.cols(); ++j) A.at(0, i, j) = p0(i, j);
    return A;
}

QMatrix& QMatrix::operator+=(const QMatrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw DimensionMismatch("QMatrix +=: " + shape(*this) + " vs " + shape(other));
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
    return *this;
}

QMatrix& QMatrix::operator-=(const QMatrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw DimensionMismatch("QMatrix -=: " + shape(*this) + " vs " + shape(other));
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
    return *this;
}

QMatrix& QMatrix::operator*=(double s) {
    for (double& v : data_) v *= s;
    return *this;
}

QMatrix operator+(QMatrix a, const QMatrix& b) { return a += b; }
QMatrix operator-(QMatrix a, const QMatrix& b) { return a -= b; }
QMatrix operator*(QMatrix a, double s) { return a *= s; }
QMatrix operator*(double s, QMatrix a) { return a *= s; }

QMatrix mat_mul(const QMatrix& A, const QMatrix& B) {
    if (A.cols() != B.rows())
        throw DimensionMismatch("mat_mul: " + shape(A) + " times " + shape(B));
    const index_t m = A.rows(), n = A.cols(), l = B.cols();
    QMatrix C(m, l);
    if (m == 0 || l == 0) return C;

    RealMatrix block_row(m, 4 * n);
    for (int r = 0; r < 4; ++r) {
        for (int s = 0; s < 4; ++s) {
            const auto [part, sign] = counterpart_block[r][s];
            const ConstMatrixView src = A.part(part);
            for (index_t i = 0; i < m; ++i)
                for (index_t j = 0; j < n; ++j) block_row(i, s * n + j) = sign * src(i, j);
        }
        kernels::gemm(block_row.view(), B.column_view(), C.part(r));
    }
    return C;
}

QMatrix adjoint_mul(const QMatrix& A, const QMatrix& B) {
    if (A.rows() != B.rows())
        throw DimensionMismatch("adjoint_mul: (" + shape(A) + ")^* times " + shape(B));
    const index_t m = A.rows(), n = A.cols(), l = B.cols();
    QMatrix C(n, l);
    if (n == 0 || l == 0) return C;

    // Block row r of Upsilon_A^T is the transpose of block column r of Upsilon_A.
    RealMatrix block_row(n, 4 * m);
    for (int r = 0; r < 4; ++r) {
        for (int s = 0; s < 4; ++s) {
            const auto [part, sign] = counterpart_block[s][r];
            const ConstMatrixView src = A.part(part);
            for (index_t i = 0; i < m; ++i)
                for (index_t j = 0; j < n; ++j) block_row(j, s * m + i) = sign * src(i, j);
        }
        kernels::gemm(block_row.view(), B.column_view(), C.part(r));
    }
    return C;
}

QMatrix adjoint(const QMatrix& A) {
    QMatrix R(A.cols(), A.rows());
    for (int p = 0; p < 4; ++p) {
        const double sign = p == 0 ? 1.0 : -1.0;
        for (index_t i = 0; i < A.rows(); ++i)
            for (index_t j = 0; j < A.cols(); ++j) R.at(p, j, i) = sign * A.at(p, i, j);
    }
    return R;
}

RealMatrix real_counterpart(const QMatrix& A) {
    const index_t m = A.rows(), n = A.cols();
    RealMatrix U(4 * m, 4 * n);
    for (int r = 0; r < 4; ++r)
        for (int s = 0; s < 4; ++s) {
            const auto [part, sign] = counterpart_block[r][s];
            for (index_t i = 0; i < m; ++i)
                for (index_t j = 0; j < n; ++j) U(r * m + i, s * n + j) = sign * A.at(part, i, j);
        }
    return U;
}

RealMatrix column_rep(const QMatrix& A) {
    RealMatrix C(4 * A.rows(), A.cols());
    const auto src = A.storage();
    std::copy(src.begin(), src.end(), C.data().begin());
    return C;
}

QMatrix from_column_rep(const RealMatrix& C) {
    if (C.rows() % 4 != 0)
        throw InvalidArgument("from_column_rep: row count " + std::to_string(C.rows()) +
                              " is not a multiple of 4");
    QMatrix A(C.rows() / 4, C.cols());
    const auto src = C.data();
    std::copy(src.begin(), src.end(), A.storage().begin());
    return A;
}

double frobenius_norm_squared(const QMatrix& A) {
    double s = 0.0;
    for (double v : A.storage()) s += v * v;
    return s;
}

double frobenius_norm(const QMatrix& A) { return std::sqrt(frobenius_norm_squared(A)); }

double hermitian_defect(const QMatrix& A) {
    if (A.rows() != A.cols()) return INFINITY;
    double s = 0.0;
    for (index_t i = 0; i < A.rows(); ++i)
        for (index_t j = 0; j < A.cols(); ++j) s += norm2(A(i, j) - conj(A(j, i)));
    return std::sqrt(s);
}

bool is_hermitian(const QMatrix& A, double rel_tol) {
    return A.rows() == A.cols() && hermitian_defect(A) <= rel_tol * frobenius_norm(A);
}

void require_hermitian(const QMatrix& A, double rel_tol, const char* who) {
    if (A.rows() != A.cols())
        throw NotHermitian(std::string(who) + ": matrix is not square (" + shape(A) + ")");
    const double defect = hermitian_defect(A);
    const double scale = frobenius_norm(A);
    if (defect > rel_tol * scale)
        throw NotHermitian(std::string(who) + ": ||A - A^*||_F = " + std::to_string(defect) +
                           " exceeds tolerance");
}

double hermitian_det(const QMatrix& A, std::span<const double> eigenvalues, double rel_tol) {
    require_hermitian(A, rel_tol, "hermitian_det");
    if (static_cast<index_t>(eigenvalues.size()) != A.rows())
        throw DimensionMismatch("hermitian_det: eigenvalue count does not match matrix order");
    double det = 1.0;
    for (double l : eigenvalues) det *= l;
    return det;
}

QMatrix block(const QMatrix& A, index_t r0, index_t c0, index_t rows, index_t cols) {
    if (r0 < 0 || c0 < 0 || rows < 0 || cols < 0 || r0 + rows > A.rows() || c0 + cols > A.cols())
        throw DimensionMismatch("block: range outside " + shape(A));
    QMatrix B(rows, cols);
    for (int p = 0; p < 4; ++p)
        for (index_t i = 0; i < rows; ++i)
            for (index_t j = 0; j < cols; ++j) B.at(p, i, j) = A.at(p, r0 + i, c0 + j);
    return B;
}

QMatrix leading_columns(const QMatrix& A, index_t k) { return block(A, 0, 0, A.rows(), k); }

QMatrix hcat(const QMatrix& A, const QMatrix& B) {
    if (A.rows() != B.rows()) throw DimensionMismatch("hcat: row counts differ");
    QMatrix C(A.rows(), A.cols() + B.cols());
    for (int p = 0; p < 4; ++p)
        for (index_t i = 0; i < A.rows(); ++i) {
            for (index_t j = 0; j < A.cols(); ++j) C.at(p, i, j) = A.at(p, i, j);
            for (index_t j = 0; j < B.cols(); ++j) C.at(p, i, A.cols() + j) = B.at(p, i, j);
        }
    return C;
}

QMatrix scale_columns(QMatrix A, std::span<const double> s) {
    if (static_cast<index_t>(s.size()) != A.cols())
        throw DimensionMismatch("scale_columns: scale vector length mismatch");
    for (int p = 0; p < 4; ++p)
        for (index_t i = 0; i < A.rows(); ++i)
            for (index_t j = 0; j < A.cols(); ++j) A.at(p, i, j) *= s[j];
    return A;
}

QMatrix reconstruct(const QMatrix& U, std::span<const double> s, const QMatrix& V) {
    if (U.cols() != static_cast<index_t>(s.size()) || V.cols() != U.cols())
        throw DimensionMismatch("reconstruct: factor shapes disagree");
    return mat_mul(scale_columns(U, s), adjoint(V));
}

std::vector<Quaternion> column(const QMatrix& A, index_t j) {
    std::vector<Quaternion> v(static_cast<std::size_t>(A.rows()));
    for (index_t i = 0; i < A.rows(); ++i) v[static_cast<std::size_t>(i)] = A(i, j);
    return v;
}

double norm(std::span<const Quaternion> v) {
    double s = 0.0;
    for (const Quaternion& q : v) s += norm2(q);
    return std::sqrt(s);
}

} // namespace quat

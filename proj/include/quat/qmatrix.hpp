#pragma once

#include "quat/quaternion.hpp"
#include "quat/real_matrix.hpp"

#include <array>
#include <span>
#include <vector>

namespace quat {

// Dense m x n quaternion matrix A = A0 + A1 i + A2 j + A3 k.
//
// The four real parts live in one contiguous buffer, part p occupying a
// row-major m x n slab at offset p*m*n. Stacking the slabs is exactly the
// column representation A_c (4m x n, row-major), so column_view() is free.
class QMatrix {
public:
    QMatrix() = default;
    QMatrix(index_t rows, index_t cols);

    static QMatrix identity(index_t n);
    static QMatrix from_parts(const RealMatrix& p0, const RealMatrix& p1, const RealMatrix& p2,
                              const RealMatrix& p3);
    // Real matrix embedded as the scalar part.
    static QMatrix from_real(const RealMatrix& p0);

    index_t rows() const noexcept { return rows_; }
    index_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

    Quaternion operator()(index_t i, index_t j) const {
        const std::size_t o = offset(i, j);
        return {data_[o], data_[o + slab()], data_[o + 2 * slab()], data_[o + 3 * slab()]};
    }
    void set(index_t i, index_t j, const Quaternion& q) {
        const std::size_t o = offset(i, j);
        data_[o] = q.w;
        data_[o + slab()] = q.x;
        data_[o + 2 * slab()] = q.y;
        data_[o + 3 * slab()] = q.z;
    }

    double& at(int part, index_t i, index_t j) { return data_[part * slab() + offset(i, j)]; }
    double at(int part, index_t i, index_t j) const { return data_[part * slab() + offset(i, j)]; }

    MatrixView part(int p) { return {data_.data() + p * slab(), rows_, cols_, cols_}; }
    ConstMatrixView part(int p) const { return {data_.data() + p * slab(), rows_, cols_, cols_}; }

    // 4m x n column representation, no copy.
    ConstMatrixView column_view() const { return {data_.data(), 4 * rows_, cols_, cols_}; }
    MatrixView column_view() { return {data_.data(), 4 * rows_, cols_, cols_}; }

    std::span<double> storage() noexcept { return data_; }
    std::span<const double> storage() const noexcept { return data_; }

    QMatrix& operator+=(const QMatrix& other);
    QMatrix& operator-=(const QMatrix& other);
    QMatrix& operator*=(double s);

    bool operator==(const QMatrix&) const = default;

private:
    std::size_t slab() const noexcept { return static_cast<std::size_t>(rows_ * cols_); }
    std::size_t offset(index_t i, index_t j) const noexcept {
        return static_cast<std::size_t>(i * cols_ + j);
    }

    index_t rows_ = 0;
    index_t cols_ = 0;
    std::vector<double> data_;
};

QMatrix operator+(QMatrix a, const QMatrix& b);
QMatrix operator-(QMatrix a, const QMatrix& b);
QMatrix operator*(QMatrix a, double s);
QMatrix operator*(double s, QMatrix a);

// A * B, computed as (AB)_c = Upsilon_A * B_c one block row of Upsilon_A at
// a time (a 4mn scratch buffer, never the full 4m x 4n counterpart).
QMatrix mat_mul(const QMatrix& A, const QMatrix& B);
inline QMatrix operator*(const QMatrix& A, const QMatrix& B) { return mat_mul(A, B); }

// A^* B without materializing A^*.
QMatrix adjoint_mul(const QMatrix& A, const QMatrix& B);

// Conjugate transpose.
QMatrix adjoint(const QMatrix& A);

// 4m x 4n real counterpart in the block pattern
//   [A0 -A1 -A2 -A3; A1 A0 -A3 A2; A2 A3 A0 -A1; A3 -A2 A1 A0].
RealMatrix real_counterpart(const QMatrix& A);

// Owning copy of the column representation [A0; A1; A2; A3].
RealMatrix column_rep(const QMatrix& A);
QMatrix from_column_rep(const RealMatrix& C);

double frobenius_norm(const QMatrix& A);
double frobenius_norm_squared(const QMatrix& A);

// ||A - A^*||_F.
double hermitian_defect(const QMatrix& A);
bool is_hermitian(const QMatrix& A, double rel_tol = 1e-12);
// Throws NotHermitian if ||A - A^*||_F > rel_tol * ||A||_F.
void require_hermitian(const QMatrix& A, double rel_tol, const char* who);

// Determinant of a Hermitian matrix as the product of its (real) eigenvalues.
// The eigenvalues come from eig_hermitian; this only validates and multiplies.
double hermitian_det(const QMatrix& A, std::span<const double> eigenvalues, double rel_tol = 1e-10);

// Submatrix copies.
QMatrix block(const QMatrix& A, index_t r0, index_t c0, index_t rows, index_t cols);
QMatrix leading_columns(const QMatrix& A, index_t k);
// [A B] and [A; B].
QMatrix hcat(const QMatrix& A, const QMatrix& B);

// A * diag(s) (scales column j by the real s[j]).
QMatrix scale_columns(QMatrix A, std::span<const double> s);

// U * diag(s) * V^*.
QMatrix reconstruct(const QMatrix& U, std::span<const double> s, const QMatrix& V);

// Column j as a vector of quaternions, and the quaternion 2-norm of a vector.
std::vector<Quaternion> column(const QMatrix& A, index_t j);
double norm(std::span<const Quaternion> v);

} // namespace quat

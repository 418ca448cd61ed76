#pragma once

#include <cassert>
#include <cstddef>
#include <span>
#include <vector>

namespace quat {

using index_t = std::ptrdiff_t;

// Non-owning row-major view with a leading dimension.
struct MatrixView {
    double* data = nullptr;
    index_t rows = 0;
    index_t cols = 0;
    index_t ld = 0;

    double& operator()(index_t i, index_t j) const { return data[i * ld + j]; }
};

struct ConstMatrixView {
    const double* data = nullptr;
    index_t rows = 0;
    index_t cols = 0;
    index_t ld = 0;

    ConstMatrixView() = default;
    ConstMatrixView(const double* d, index_t r, index_t c, index_t l) : data(d), rows(r), cols(c), ld(l) {}
    ConstMatrixView(const MatrixView& v) : data(v.data), rows(v.rows), cols(v.cols), ld(v.ld) {}

    double operator()(index_t i, index_t j) const { return data[i * ld + j]; }
};

// Dense owning real matrix, row-major. Used for real counterparts, the
// orthogonal factors of the real bidiagonal/tridiagonal kernels, and tests.
class RealMatrix {
public:
    RealMatrix() = default;
    RealMatrix(index_t rows, index_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows * cols), fill) {}

    static RealMatrix identity(index_t n) {
        RealMatrix I(n, n);
        for (index_t i = 0; i < n; ++i) I(i, i) = 1.0;
        return I;
    }

    index_t rows() const noexcept { return rows_; }
    index_t cols() const noexcept { return cols_; }

    double& operator()(index_t i, index_t j) {
        assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
        return data_[static_cast<std::size_t>(i * cols_ + j)];
    }
    double operator()(index_t i, index_t j) const {
        assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
        return data_[static_cast<std::size_t>(i * cols_ + j)];
    }

    std::span<double> data() noexcept { return data_; }
    std::span<const double> data() const noexcept { return data_; }

    MatrixView view() noexcept { return {data_.data(), rows_, cols_, cols_}; }
    ConstMatrixView view() const noexcept { return {data_.data(), rows_, cols_, cols_}; }

    bool operator==(const RealMatrix&) const = default;

private:
    index_t rows_ = 0;
    index_t cols_ = 0;
    std::vector<double> data_;
};

RealMatrix transpose(const RealMatrix& A);
RealMatrix operator*(const RealMatrix& A, const RealMatrix& B);
double frobenius_norm(const RealMatrix& A);

} // namespace quat

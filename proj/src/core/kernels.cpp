#include "quat/kernels.hpp"

#include "quat/errors.hpp"
#include "quat/execution.hpp"

#include <algorithm>
#include <atomic>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace quat {

namespace {
std::atomic<Execution> g_execution{Execution::parallel};
}

void set_execution(Execution mode) noexcept { g_execution.store(mode); }
Execution execution() noexcept { return g_execution.load(); }

int kernel_threads() noexcept {
#ifdef _OPENMP
    return execution() == Execution::strict ? 1 : omp_get_max_threads();
#else
    return 1;
#endif
}

} // namespace quat

namespace quat::kernels {

namespace {

void check_shapes(ConstMatrixView A, ConstMatrixView B, MatrixView C) {
    if (A.cols != B.rows || C.rows != A.rows || C.cols != B.cols)
        throw DimensionMismatch("gemm: inconsistent operand shapes");
}

// Inner block along the summation index; keeps a panel of B hot in cache.
// Blocks are visited in increasing order so the per-element order is the
// plain 0..K-1 sum.
constexpr index_t k_block = 256;

inline void gemm_rows(ConstMatrixView A, ConstMatrixView B, MatrixView C, index_t i) {
    double* c = C.data + i * C.ld;
    std::fill(c, c + C.cols, 0.0);
    const double* a = A.data + i * A.ld;
    for (index_t k0 = 0; k0 < A.cols; k0 += k_block) {
        const index_t k1 = std::min(A.cols, k0 + k_block);
        for (index_t k = k0; k < k1; ++k) {
            const double aik = a[k];
            if (aik == 0.0) continue;
            const double* b = B.data + k * B.ld;
            for (index_t j = 0; j < C.cols; ++j) c[j] += aik * b[j];
        }
    }
}

} // namespace

void gemm_serial(ConstMatrixView A, ConstMatrixView B, MatrixView C) {
    check_shapes(A, B, C);
    for (index_t i = 0; i < C.rows; ++i) gemm_rows(A, B, C, i);
}

void gemm_parallel(ConstMatrixView A, ConstMatrixView B, MatrixView C) {
    check_shapes(A, B, C);
#pragma omp parallel for schedule(static)
    for (index_t i = 0; i < C.rows; ++i) gemm_rows(A, B, C, i);
}

void gemm(ConstMatrixView A, ConstMatrixView B, MatrixView C) {
    const long long flops = static_cast<long long>(A.rows) * A.cols * B.cols;
    if (kernel_threads() > 1 && flops >= parallel_flop_threshold)
        gemm_parallel(A, B, C);
    else
        gemm_serial(A, B, C);
}

double pairwise_sum(std::span<const double> values) {
    if (values.size() <= 8) {
        double s = 0.0;
        for (double v : values) s += v;
        return s;
    }
    const std::size_t half = values.size() / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

} // namespace quat::kernels

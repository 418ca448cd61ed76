#pragma once

#include "quat/real_matrix.hpp"

#include <span>

namespace quat::kernels {

// C = A * B for row-major real matrices (C is overwritten).
//
// gemm_serial is the reference implementation. gemm_parallel splits the
// rows of C across OpenMP threads; every C(i, j) is accumulated over the
// inner index in increasing order in both versions, so results match bit
// for bit. gemm() picks one according to the execution mode and size.
void gemm_serial(ConstMatrixView A, ConstMatrixView B, MatrixView C);
void gemm_parallel(ConstMatrixView A, ConstMatrixView B, MatrixView C);
void gemm(ConstMatrixView A, ConstMatrixView B, MatrixView C);

// Pairwise (cascade) summation. Result depends only on the order of the
// values, never on how the caller partitioned the work that produced them.
double pairwise_sum(std::span<const double> values);

// Below this many multiply-adds the parallel kernel is not worth a fork.
inline constexpr long long parallel_flop_threshold = 1LL << 16;

} // namespace quat::kernels

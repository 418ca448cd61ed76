// Serial reference vs OpenMP kernels, plus the quaternion product and one
// randomized SVD built on them.

#include "quat/kernels.hpp"
#include "quat/qmatrix.hpp"
#include "quat/randomized.hpp"
#include "quat/execution.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace quat;

namespace {

RealMatrix random_real(index_t m, index_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    RealMatrix A(m, n);
    for (index_t i = 0; i < m; ++i)
        for (index_t j = 0; j < n; ++j) A(i, j) = g(rng);
    return A;
}

template <void (*Kernel)(ConstMatrixView, ConstMatrixView, MatrixView)>
void BM_gemm(benchmark::State& state) {
    const index_t n = state.range(0);
    const RealMatrix A = random_real(n, n, 1), B = random_real(n, n, 2);
    RealMatrix C(n, n);
    for (auto _ : state) {
        Kernel(A.view(), B.view(), C.view());
        benchmark::DoNotOptimize(C.data().data());
    }
    state.SetItemsProcessed(state.iterations() * n * n * n);
}

void BM_mat_mul(benchmark::State& state) {
    const index_t n = state.range(0);
    const QMatrix A = sample_gaussian(n, n, 3), B = sample_gaussian(n, n, 4);
    const Execution mode = state.range(1) ? Execution::parallel : Execution::strict;
    ScopedExecution scope(mode);
    for (auto _ : state) benchmark::DoNotOptimize(mat_mul(A, B));
}

void BM_randsvd(benchmark::State& state) {
    const QMatrix A = sample_gaussian(400, 300, 5);
    RandConfig cfg;
    cfg.k = 20;
    cfg.p = 5;
    cfg.q = 1;
    const Execution mode = state.range(0) ? Execution::parallel : Execution::strict;
    ScopedExecution scope(mode);
    for (auto _ : state) benchmark::DoNotOptimize(randsvdQ(A, cfg));
}

} // namespace

BENCHMARK_TEMPLATE(BM_gemm, kernels::gemm_serial)->Arg(64)->Arg(256)->Arg(512);
BENCHMARK_TEMPLATE(BM_gemm, kernels::gemm_parallel)->Arg(64)->Arg(256)->Arg(512);
BENCHMARK(BM_mat_mul)->Args({64, 0})->Args({64, 1})->Args({200, 0})->Args({200, 1});
BENCHMARK(BM_randsvd)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

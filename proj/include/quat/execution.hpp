#pragma once

namespace quat {

// parallel: OpenMP kernels and Monte Carlo trial loops may use threads.
// strict:   everything runs on the calling thread in a fixed order.
//
// The parallel kernels keep the per-element summation order of the serial
// reference, so both settings produce identical bits; strict mode exists so
// callers can rule threading out entirely when reproducing a run.
enum class Execution { parallel, strict };

void set_execution(Execution mode) noexcept;
Execution execution() noexcept;

// Number of OpenMP threads available to kernels (1 in strict mode or
// without OpenMP).
int kernel_threads() noexcept;

// RAII switch used by tests and the CLI's --strict flag.
class ScopedExecution {
public:
    explicit ScopedExecution(Execution mode) noexcept : saved_(execution()) { set_execution(mode); }
    ~ScopedExecution() { set_execution(saved_); }
    ScopedExecution(const ScopedExecution&) = delete;
    ScopedExecution& operator=(const ScopedExecution&) = delete;

private:
    Execution saved_;
};

} // namespace quat

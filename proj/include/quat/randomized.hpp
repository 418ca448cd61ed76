#pragma once

#include "quat/decomp.hpp"
#include "quat/qmatrix.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace quat {

// Stream seed for trial `trial` of an experiment seeded with `seed`. Every
// Monte Carlo trial draws from its own stream, so trials can run in any order
// or on any thread and still see the same numbers.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t trial);

// Quaternion Gaussian n x l matrix: each of the four real parts has
// independent N(0, 1) entries, so every entry is N(0, 4) in modulus squared.
// The parts are filled in order 0, 1, 2, 3, each row-major.
QMatrix sample_gaussian(index_t n, index_t l, std::uint64_t seed);

enum class Ortho { householder, qmgs };

struct RandConfig {
    index_t k = 10;
    index_t p = 4;
    int q = 0;
    std::uint64_t seed = 0;
    Ortho ortho = Ortho::householder;
    // Re-orthonormalize after every half-step of the power scheme. Off by
    // default so the plain scheme is what runs unless asked otherwise.
    bool stabilized_power = false;
    // Return all l = k + p triplets (the rank-(k+p) approximation QQ^*A)
    // instead of truncating to k.
    bool keep_all = false;

    index_t l() const noexcept { return k + p; }
};

// Throws InvalidArgument unless k >= 1, p >= 1, q >= 0 and k + p <= min(m, n).
void validate(const RandConfig& cfg, index_t m, index_t n);

// Linear operator seen only through products, so algorithms can be run on
// implicit matrices and the number of passes over A can be counted.
class QOperator {
public:
    virtual ~QOperator() = default;
    virtual index_t rows() const = 0;
    virtual index_t cols() const = 0;
    virtual QMatrix apply(const QMatrix& X) const = 0;          // A X
    virtual QMatrix apply_adjoint(const QMatrix& Y) const = 0;  // A^* Y
};

class DenseOperator final : public QOperator {
public:
    explicit DenseOperator(const QMatrix& A) : A_(A) {}
    index_t rows() const override { return A_.rows(); }
    index_t cols() const override { return A_.cols(); }
    QMatrix apply(const QMatrix& X) const override { return mat_mul(A_, X); }
    QMatrix apply_adjoint(const QMatrix& Y) const override { return adjoint_mul(A_, Y); }
    const QMatrix& matrix() const noexcept { return A_; }

private:
    const QMatrix& A_;
};

// Wraps another operator and counts products with A and with A^*.
class CountingOperator final : public QOperator {
public:
    explicit CountingOperator(const QOperator& inner) : inner_(inner) {}
    index_t rows() const override { return inner_.rows(); }
    index_t cols() const override { return inner_.cols(); }
    QMatrix apply(const QMatrix& X) const override {
        ++applies_;
        return inner_.apply(X);
    }
    QMatrix apply_adjoint(const QMatrix& Y) const override {
        ++adjoint_applies_;
        return inner_.apply_adjoint(Y);
    }
    int applies() const noexcept { return applies_; }
    int adjoint_applies() const noexcept { return adjoint_applies_; }
    int passes() const noexcept { return applies_ + adjoint_applies_; }

private:
    const QOperator& inner_;
    mutable int applies_ = 0;
    mutable int adjoint_applies_ = 0;
};

// Orthonormal columns (per cfg.ortho).
QMatrix orthonormalize(const QMatrix& Y, Ortho ortho);

// Steps 1-3 of the fixed-rank algorithm: Y0 = A Omega, q power rounds, and
// an orthonormal basis Q (m x l) of the final sample.
QMatrix randomized_range(const QOperator& A, const RandConfig& cfg);
QMatrix randomized_range(const QMatrix& A, const RandConfig& cfg);

// A ~ Uk diag(Sk) Vk^*.
struct LowRankApprox {
    QMatrix U;
    std::vector<double> S;
    QMatrix V;
    // ||A - Q Q^* A||_F from ||A||_F^2 - ||Q^* A||_F^2, set for dense inputs.
    // Cancellation makes it unreliable below about 1e-8 ||A||_F.
    std::optional<double> residual_fro;
};

// Randomized QSVD with fixed rank: B = Q^* A, QSVD of B, U = Q U_B.
LowRankApprox randsvdQ(const QOperator& A, const RandConfig& cfg);
LowRankApprox randsvdQ(const QMatrix& A, const RandConfig& cfg);

// Variant for l << n: factor B^* = Q1 R1 (with cfg.ortho), take the QSVD of the
// l x l factor R1 = T S Z^*, then U = Q Z and V = Q1 T.
LowRankApprox prandsvdQ(const QOperator& A, const RandConfig& cfg);
LowRankApprox prandsvdQ(const QMatrix& A, const RandConfig& cfg);

// Hermitian A ~ Q (Q^* A Q) Q^*. Returns the k eigenpairs of largest
// magnitude, listed by descending eigenvalue.
EigResult randeigQ(const QMatrix& A, const RandConfig& cfg, double hermitian_tol = 1e-10);

// One pass over a Hermitian A: Y = A Omega is the only product taken. B is
// recovered from B (Q^* Omega) = Q^* Y and symmetrized. Requires cfg.q == 0.
// Throws IllConditioned if cond(Q^* Omega) > max_condition.
EigResult single_pass_hermitian(const QOperator& A, const RandConfig& cfg, double max_condition = 1e12);
EigResult single_pass_hermitian(const QMatrix& A, const RandConfig& cfg, double max_condition = 1e12,
                                double hermitian_tol = 1e-10);

} // namespace quat

#pragma once

#include "quat/qmatrix.hpp"

#include <span>
#include <vector>

namespace quat {

// H = I - 2 v v^* with H u = a e_1.
struct HouseholderVector {
    std::vector<Quaternion> v;  // unit vector; all zero for the identity reflector
    Quaternion a;
};

// a = -(u_1/|u_1|) ||u||_2 if u_1 != 0, otherwise -||u||_2;
// v = (u - a e_1) / ||u - a e_1||_2. A zero u gives v = 0, a = 0.
HouseholderVector householder_reflector(std::span<const Quaternion> u);

// H0 = diag(phase, I) * (I - 2 v v^*), phase = a^*/|a|, so that H0 u = ||u||_2 e_1.
// The leading entry of the image is real and nonnegative.
struct Reflector {
    std::vector<Quaternion> v;
    Quaternion phase{1.0};
    double beta = 0.0;  // ||u||_2, the value H0 puts in the leading slot

    index_t size() const noexcept { return static_cast<index_t>(v.size()); }
};

Reflector householder_h0(std::span<const Quaternion> u);

// H0 u and H0^* u for a vector of matching length.
std::vector<Quaternion> reflect(const Reflector& h, std::span<const Quaternion> u);
std::vector<Quaternion> reflect_adjoint(const Reflector& h, std::span<const Quaternion> u);

// In-place block updates. The reflector acts on rows [r0, r0 + h.size()) for
// left applications and on columns [c0, c0 + h.size()) for right ones; the
// other index runs over [begin, end) (end < 0 means "to the last one").
// Columns (rows) are processed independently, in parallel when large.
void apply_left(const Reflector& h, QMatrix& A, index_t r0, index_t col_begin = 0, index_t col_end = -1);
void apply_left_adjoint(const Reflector& h, QMatrix& A, index_t r0, index_t col_begin = 0,
                        index_t col_end = -1);
void apply_right(const Reflector& h, QMatrix& A, index_t c0, index_t row_begin = 0, index_t row_end = -1);
void apply_right_adjoint(const Reflector& h, QMatrix& A, index_t c0, index_t row_begin = 0,
                         index_t row_end = -1);

// Product H0_0^* H0_1^* ... H0_{r-1}^* X where reflector j acts on rows
// offset + j onward. This is how stored factors are turned into the
// columns of a unitary matrix without forming the whole thing.
void apply_reflectors_adjoint(std::span<const Reflector> hs, index_t offset, QMatrix& X);

struct QrResult {
    QMatrix Q;  // m x l with orthonormal columns (l = n thin, l = m full)
    QMatrix R;  // l x n upper triangular, real nonnegative diagonal
};

// Structure-preserving Householder QR built from H0 transformations.
// thin requires m >= n.
QrResult householder_qr(const QMatrix& A, bool thin = true);

struct QmgsOptions {
    // Second Gram-Schmidt sweep per column; restores orthogonality for
    // ill-conditioned inputs at twice the cost.
    bool reorthogonalize = false;
    // Rank deficiency is reported when a column norm after orthogonalization
    // falls below factor * n * eps * ||A||_F.
    double rank_tol_factor = 100.0;
};

// Thin QR by quaternion modified Gram-Schmidt. Throws RankDeficient.
QrResult qmgs(const QMatrix& A, const QmgsOptions& options = {});

} // namespace quat

#pragma once

#include "quat/real_matrix.hpp"

#include <span>
#include <vector>

namespace quat {

// B = U diag(s) V^T for a square upper bidiagonal B with diagonal d and
// superdiagonal e (|e| = |d| - 1). s is sorted descending, nonnegative.
// U and V are empty when vectors are not requested.
struct BidiagSvd {
    std::vector<double> s;
    RealMatrix U;
    RealMatrix V;
};

// Golub-Kahan implicit-shift QR with a Wilkinson shift. Throws NoConvergence
// after 30 * n QR sweeps.
BidiagSvd bidiag_svd(std::vector<double> d, std::vector<double> e, bool want_vectors = true);

// Same, taking the bidiagonal as a dense square matrix. Throws
// InvalidArgument if anything off the two bands is nonzero.
BidiagSvd real_bidiag_svd(const RealMatrix& D, bool want_vectors = true);

// T = Z diag(lambda) Z^T for a symmetric tridiagonal T (diagonal d,
// off-diagonal e, |e| = |d| - 1). lambda sorted descending.
struct TridiagEig {
    std::vector<double> lambda;
    RealMatrix Z;
};

// Implicit QL with Wilkinson-type shifts. Throws NoConvergence after 30
// iterations on a single eigenvalue.
TridiagEig tridiag_eig(std::vector<double> d, std::vector<double> e, bool want_vectors = true);

} // namespace quat

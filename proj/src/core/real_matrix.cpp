#include "quat/real_matrix.hpp"

#include "quat/errors.hpp"
#include "quat/kernels.hpp"

#include <cmath>

namespace quat {

RealMatrix transpose(const RealMatrix& A) {
    RealMatrix T(A.cols(), A.rows());
    for (index_t i = 0; i < A.rows(); ++i)
        for (index_t j = 0; j < A.cols(); ++j) T(j, i) = A(i, j);
    return T;
}

RealMatrix operator*(const RealMatrix& A, const RealMatrix& B) {
    if (A.cols() != B.rows()) throw DimensionMismatch("RealMatrix product: inner dimensions differ");
    RealMatrix C(A.rows(), B.cols());
    if (C.rows() > 0 && C.cols() > 0) kernels::gemm(A.view(), B.view(), C.view());
    return C;
}

double frobenius_norm(const RealMatrix& A) {
    double s = 0.0;
    for (double v : A.data()) s += v * v;
    return std::sqrt(s);
}

} // namespace quat

#include "support.hpp"

#include "quat/decomp.hpp"
#include "quat/errors.hpp"

#include <gtest/gtest.h>

#include <numbers>
#include <random>

using namespace quat;
using quat::test::random_qmatrix;
using quat::test::to_eigen;

namespace {

constexpr double eps = std::numeric_limits<double>::epsilon();

std::vector<Quaternion> random_vector(index_t n, std::mt19937_64& rng) {
    return column(random_qmatrix(n, 1, rng), 0);
}

QMatrix diag(std::initializer_list<double> values, index_t m, index_t n) {
    QMatrix D(m, n);
    index_t i = 0;
    for (double v : values) {
        D.at(0, i, i) = v;
        ++i;
    }
    return D;
}

// Full QSVD residual and orthogonality checks.
void expect_valid_qsvd(const QMatrix& A, const QsvdResult& r, double c = 100.0) {
    const index_t k = static_cast<index_t>(r.S.size());
    ASSERT_EQ(r.U.rows(), A.rows());
    ASSERT_EQ(r.V.rows(), A.cols());
    ASSERT_EQ(r.U.cols(), k);
    ASSERT_EQ(r.V.cols(), k);
    EXPECT_LE(test::orthogonality_defect(r.U), c * eps * std::max<index_t>(k, 1));
    EXPECT_LE(test::orthogonality_defect(r.V), c * eps * std::max<index_t>(k, 1));
    for (index_t i = 0; i < k; ++i) {
        EXPECT_GE(r.S[static_cast<std::size_t>(i)], 0.0);
        if (i > 0) {
            EXPECT_LE(r.S[static_cast<std::size_t>(i)], r.S[static_cast<std::size_t>(i - 1)]);
        }
    }
    EXPECT_LE(frobenius_norm(reconstruct(r.U, r.S, r.V) - A), c * eps * std::max<index_t>(k, 1) * frobenius_norm(A) + 1e-300);
}

} // namespace

TEST(Householder, ReflectorOfE1) {
    const std::vector<Quaternion> u{1.0, 0.0, 0.0};
    const HouseholderVector hv = householder_reflector(u);
    EXPECT_EQ(hv.a, Quaternion(-1.0));
    Reflector h;
    h.v = hv.v;  // phase 1: plain I - 2vv^*
    const auto image = reflect(h, u);
    EXPECT_NEAR(abs(image[0] - Quaternion(-1.0)), 0.0, 1e-15);
}

TEST(Householder, ReflectorZeroLeadingEntry) {
    const std::vector<Quaternion> u{0.0, 3.0};
    const HouseholderVector hv = householder_reflector(u);
    EXPECT_EQ(hv.a, Quaternion(-3.0));
    Reflector h;
    h.v = hv.v;
    const auto image = reflect(h, u);
    EXPECT_LT(abs(image[0] - Quaternion(-3.0)) + abs(image[1]), 1e-14);
}

TEST(Householder, ReflectorQuaternionLeadingEntry) {
    const std::vector<Quaternion> u{Quaternion::i(), Quaternion(0, 0, 2, 0), Quaternion(2.0)};
    const HouseholderVector hv = householder_reflector(u);
    EXPECT_LT(abs(hv.a - Quaternion(0, -3, 0, 0)), 1e-15);
}

TEST(Householder, ZeroVectorGivesIdentity) {
    const std::vector<Quaternion> u(3);
    const Reflector h = householder_h0(u);
    EXPECT_EQ(h.beta, 0.0);
    const std::vector<Quaternion> x{1.0, Quaternion::j(), 2.0};
    EXPECT_TRUE(reflect(h, x) == x);
}

TEST(Householder, H0MapsToRealMultipleOfE1) {
    EXPECT_LT(abs(reflect(householder_h0(std::vector<Quaternion>{1.0}), std::vector<Quaternion>{1.0})[0] - 1.0), 1e-15);
    const std::vector<Quaternion> ie1{Quaternion::i(), 0.0};
    const auto image = reflect(householder_h0(ie1), ie1);
    EXPECT_LT(abs(image[0] - Quaternion(1.0)) + abs(image[1]), 1e-15);

    std::mt19937_64 rng(21);
    for (int t = 0; t < 50; ++t) {
        const auto u = random_vector(4, rng);
        const Reflector h = householder_h0(u);
        auto hu = reflect(h, u);
        hu[0] -= Quaternion(norm(u));
        EXPECT_LT(norm(hu), 1e-13 * norm(u));
        EXPECT_NEAR(h.beta, norm(u), 1e-14 * norm(u));
        // H0^* undoes H0
        const auto back = reflect_adjoint(h, reflect(h, u));
        double err = 0.0;
        for (std::size_t i = 0; i < u.size(); ++i) err += norm2(back[i] - u[i]);
        EXPECT_LT(std::sqrt(err), 1e-14 * norm(u));
    }
}

TEST(Householder, RightApplicationsAgreeWithProducts) {
    std::mt19937_64 rng(22);
    const auto u = random_vector(4, rng);
    const Reflector h = householder_h0(u);
    QMatrix H = QMatrix::identity(4);
    apply_left(h, H, 0);
    const QMatrix A = random_qmatrix(3, 4, rng);
    QMatrix R = A;
    apply_right(h, R, 0);
    EXPECT_LT(test::max_abs_diff(R, A * H), 1e-14 * frobenius_norm(A));
    QMatrix Ra = A;
    apply_right_adjoint(h, Ra, 0);
    EXPECT_LT(test::max_abs_diff(Ra, A * adjoint(H)), 1e-14 * frobenius_norm(A));
    EXPECT_LT(test::orthogonality_defect(H), 1e-14);
}

TEST(HouseholderQr, TrivialCases) {
    RealMatrix m2(1, 1);
    m2(0, 0) = -2.0;
    const QrResult r = householder_qr(QMatrix::from_real(m2));
    EXPECT_LT(abs(r.Q(0, 0) - Quaternion(-1.0)), 1e-15);
    EXPECT_LT(abs(r.R(0, 0) - Quaternion(2.0)), 1e-15);

    std::mt19937_64 rng(23);
    const QMatrix Q0 = householder_qr(random_qmatrix(6, 3, rng)).Q;
    const QrResult again = householder_qr(Q0);
    EXPECT_LT(frobenius_norm(again.R - QMatrix::identity(3)), 100 * eps * 3);
    EXPECT_THROW(householder_qr(QMatrix(2, 3)), InvalidArgument);
}

TEST(HouseholderQr, RandomResidualsThinAndFull) {
    std::mt19937_64 rng(24);
    for (int t = 0; t < 100; ++t) {
        const index_t m = 1 + static_cast<index_t>(rng() % 30);
        const index_t n = 1 + static_cast<index_t>(rng() % std::min<index_t>(m, 20));
        const QMatrix A = random_qmatrix(m, n, rng);
        for (bool thin : {true, false}) {
            const QrResult r = householder_qr(A, thin);
            const index_t l = thin ? n : m;
            ASSERT_EQ(r.Q.cols(), l);
            EXPECT_LE(test::orthogonality_defect(r.Q), 100 * eps * l);
            EXPECT_LE(frobenius_norm(r.Q * r.R - A), 100 * eps * frobenius_norm(A));
            for (index_t i = 0; i < l; ++i)
                for (index_t j = 0; j < std::min<index_t>(i, n); ++j) EXPECT_EQ(r.R(i, j), Quaternion{});
            for (index_t i = 0; i < std::min(l, n); ++i) {
                const Quaternion d = r.R(i, i);
                EXPECT_GE(d.w, 0.0);
                EXPECT_EQ(d.x, 0.0);
                EXPECT_EQ(d.y, 0.0);
                EXPECT_EQ(d.z, 0.0);
            }
        }
    }
}

TEST(Qmgs, OrthonormalInputIsFixed) {
    std::mt19937_64 rng(25);
    const QMatrix Q0 = householder_qr(random_qmatrix(8, 4, rng)).Q;
    const QrResult r = qmgs(Q0);
    EXPECT_LT(frobenius_norm(r.Q - Q0), 100 * eps * 4);
    EXPECT_LT(frobenius_norm(r.R - QMatrix::identity(4)), 100 * eps * 4);
}

TEST(Qmgs, RandomWellConditioned) {
    std::mt19937_64 rng(26);
    for (int t = 0; t < 100; ++t) {
        const index_t m = 1 + static_cast<index_t>(rng() % 30);
        const index_t n = 1 + static_cast<index_t>(rng() % std::min<index_t>(m, 20));
        const QMatrix A = random_qmatrix(m, n, rng);
        for (bool reorth : {false, true}) {
            const QrResult r = qmgs(A, {.reorthogonalize = reorth});
            EXPECT_LT(test::orthogonality_defect(r.Q), 1e-10);
            EXPECT_LT(frobenius_norm(r.Q * r.R - A), 1e-10 * frobenius_norm(A));
        }
    }
}

TEST(Qmgs, DuplicatedColumnIsRankDeficient) {
    std::mt19937_64 rng(27);
    QMatrix A = random_qmatrix(6, 3, rng);
    for (index_t i = 0; i < 6; ++i) A.set(i, 2, A(i, 0));
    try {
        qmgs(A);
        FAIL() << "expected RankDeficient";
    } catch (const RankDeficient& e) {
        EXPECT_EQ(e.column(), 2);
    }
    EXPECT_THROW(qmgs(QMatrix(2, 3)), InvalidArgument);
}

TEST(Qmgs, ReorthogonalizationHelpsIllConditionedInput) {
    // Columns with singular values spread over 1e-7: one sweep loses
    // orthogonality, two sweeps keep it at working precision.
    std::mt19937_64 rng(28);
    const index_t m = 40, n = 12;
    const QMatrix U = householder_qr(random_qmatrix(m, n, rng)).Q;
    const QMatrix V = householder_qr(random_qmatrix(n, n, rng)).Q;
    std::vector<double> s(n);
    for (index_t i = 0; i < n; ++i) s[static_cast<std::size_t>(i)] = std::pow(10.0, -7.0 * static_cast<double>(i) / (n - 1));
    const QMatrix A = reconstruct(U, s, V);
    const double one = test::orthogonality_defect(qmgs(A).Q);
    const double two = test::orthogonality_defect(qmgs(A, {.reorthogonalize = true}).Q);
    EXPECT_LT(two, 1e-13);
    EXPECT_GT(one, 10 * two);
}

TEST(Bidiagonalize, DiagonalInputIsUnchanged) {
    const QMatrix B = diag({3.0, 2.0, 0.5}, 3, 5);
    const Bidiagonalization bd = bidiagonalize(B);
    for (index_t i = 0; i < 3; ++i)
        for (index_t j = 0; j < 5; ++j) EXPECT_NEAR(bd.D(i, j), B(i, j).w, 1e-15);
}

TEST(Bidiagonalize, OneByOnePureQuaternion) {
    QMatrix B(1, 1);
    B.set(0, 0, Quaternion::k());
    const Bidiagonalization bd = bidiagonalize(B);
    EXPECT_NEAR(bd.D(0, 0), 1.0, 1e-15);
    EXPECT_LT(frobenius_norm(bd.P() * QMatrix::from_real(bd.D) * adjoint(bd.W()) - B), 1e-15);
}

TEST(Bidiagonalize, RandomShapesReconstruct) {
    std::mt19937_64 rng(29);
    const index_t shapes[][2] = {{3, 5}, {5, 3}, {4, 4}, {1, 6}, {6, 1}, {7, 2}};
    for (const auto& s : shapes) {
        const QMatrix B = random_qmatrix(s[0], s[1], rng);
        const Bidiagonalization bd = bidiagonalize(B);
        const QMatrix P = bd.P(), W = bd.W();
        EXPECT_LT(test::orthogonality_defect(P), 1e-13);
        EXPECT_LT(test::orthogonality_defect(W), 1e-13);
        const QMatrix D = adjoint(P) * B * W;
        const double nb = frobenius_norm(B);
        EXPECT_LT(frobenius_norm(D - QMatrix::from_real(bd.D)), 1e-12 * nb);
        for (index_t i = 0; i < s[0]; ++i)
            for (index_t j = 0; j < s[1]; ++j) {
                const Quaternion q = D(i, j);
                EXPECT_LT(std::abs(q.x) + std::abs(q.y) + std::abs(q.z), 1e-13 * nb);
                if (j != i && j != i + 1) {
                    EXPECT_LT(abs(q), 1e-13 * nb);
                }
            }
    }
}

TEST(BidiagSvd, SmallClosedForms) {
    RealMatrix d(2, 2);
    d(0, 0) = 1.0;
    d(1, 1) = 3.0;
    EXPECT_EQ(real_bidiag_svd(d).s, (std::vector<double>{3.0, 1.0}));

    RealMatrix g(2, 2);
    g(0, 0) = 1.0;
    g(0, 1) = 1.0;
    g(1, 1) = 1.0;
    const auto s = real_bidiag_svd(g).s;
    EXPECT_NEAR(s[0], std::numbers::phi, 1e-15);
    EXPECT_NEAR(s[1], 1.0 / std::numbers::phi, 1e-15);

    RealMatrix bad(3, 3);
    bad(2, 0) = 1.0;
    EXPECT_THROW(real_bidiag_svd(bad), InvalidArgument);
}

TEST(BidiagSvd, RandomAgainstEigenOracle) {
    std::mt19937_64 rng(30);
    std::normal_distribution<double> normal;
    for (int t = 0; t < 50; ++t) {
        RealMatrix D(6, 6);
        for (index_t i = 0; i < 6; ++i) {
            D(i, i) = normal(rng);
            if (i < 5) D(i, i + 1) = normal(rng);
        }
        const BidiagSvd r = real_bidiag_svd(D);
        const Eigen::MatrixXd E = to_eigen(D);
        // sqrt(eig(D^T D)) loses about eps * s1^2 / s absolutely, so it only
        // pins the dominant part; a one-sided Jacobi SVD covers the rest.
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(E.transpose() * E);
        Eigen::JacobiSVD<Eigen::MatrixXd> jacobi(E);
        for (index_t i = 0; i < 6; ++i) {
            const double s = r.s[static_cast<std::size_t>(i)];
            const double oracle = std::sqrt(std::max(0.0, es.eigenvalues()(5 - i)));
            if (oracle >= 0.1 * r.s[0]) {
                EXPECT_NEAR(s, oracle, 1e-12 * oracle);
            }
            EXPECT_NEAR(s, jacobi.singularValues()(i), 1e-12 * r.s[0]);
        }
        const Eigen::MatrixXd U = to_eigen(r.U), V = to_eigen(r.V);
        Eigen::VectorXd sv(6);
        for (int i = 0; i < 6; ++i) sv(i) = r.s[static_cast<std::size_t>(i)];
        EXPECT_LT((U * sv.asDiagonal() * V.transpose() - E).norm(), 1e-13 * E.norm());
        EXPECT_LT((U.transpose() * U - Eigen::MatrixXd::Identity(6, 6)).norm(), 1e-13);
        EXPECT_LT((V.transpose() * V - Eigen::MatrixXd::Identity(6, 6)).norm(), 1e-13);
    }
}

TEST(BidiagSvd, ZeroDiagonalEntriesDeflate) {
    const BidiagSvd r = bidiag_svd({2.0, 0.0, 1.0, 0.0}, {1.0, 1.0, 0.5});
    RealMatrix D(4, 4);
    D(0, 0) = 2.0;
    D(0, 1) = 1.0;
    D(1, 2) = 1.0;
    D(2, 2) = 1.0;
    D(2, 3) = 0.5;
    const Eigen::MatrixXd E = to_eigen(D);
    Eigen::JacobiSVD<Eigen::MatrixXd> oracle(E, Eigen::ComputeFullU | Eigen::ComputeFullV);
    for (int i = 0; i < 4; ++i) EXPECT_NEAR(r.s[static_cast<std::size_t>(i)], oracle.singularValues()(i), 1e-14);
    Eigen::VectorXd sv(4);
    for (int i = 0; i < 4; ++i) sv(i) = r.s[static_cast<std::size_t>(i)];
    EXPECT_LT((to_eigen(r.U) * sv.asDiagonal() * to_eigen(r.V).transpose() - E).norm(), 1e-14);
}

TEST(TridiagEig, AgainstEigenOracle) {
    std::mt19937_64 rng(31);
    std::normal_distribution<double> normal;
    for (int t = 0; t < 30; ++t) {
        const index_t n = 1 + t % 9;
        std::vector<double> d(n), e(n - 1);
        Eigen::MatrixXd T = Eigen::MatrixXd::Zero(n, n);
        for (index_t i = 0; i < n; ++i) T(i, i) = d[i] = normal(rng);
        for (index_t i = 0; i + 1 < n; ++i) T(i, i + 1) = T(i + 1, i) = e[i] = normal(rng);
        const TridiagEig r = tridiag_eig(d, e);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
        for (index_t i = 0; i < n; ++i) EXPECT_NEAR(r.lambda[i], es.eigenvalues()(n - 1 - i), 1e-13 * T.norm());
        const Eigen::MatrixXd Z = to_eigen(r.Z);
        Eigen::VectorXd lv(n);
        for (index_t i = 0; i < n; ++i) lv(i) = r.lambda[i];
        EXPECT_LT((T * Z - Z * lv.asDiagonal()).norm(), 1e-13 * T.norm());
    }
}

TEST(Qsvd, ConstructedSpectrum) {
    std::mt19937_64 rng(32);
    const auto hv = [&](index_t n) {
        const Reflector h = householder_h0(random_vector(n, rng));
        QMatrix H = QMatrix::identity(n);
        apply_left(h, H, 0);
        return H;
    };
    const QMatrix A = hv(5) * diag({3.0, 2.0, 1.0}, 5, 3) * adjoint(hv(3));
    const QsvdResult r = qsvd(A);
    EXPECT_NEAR(r.S[0], 3.0, 1e-12);
    EXPECT_NEAR(r.S[1], 2.0, 1e-12);
    EXPECT_NEAR(r.S[2], 1.0, 1e-12);
    expect_valid_qsvd(A, r);
}

TEST(Qsvd, ZeroMatrix) {
    const QsvdResult r = qsvd(QMatrix(4, 3));
    EXPECT_EQ(r.S, (std::vector<double>{0.0, 0.0, 0.0}));
    EXPECT_LT(test::orthogonality_defect(r.U), 1e-15);
}

TEST(Qsvd, RandomResidualsAndCounterpartOracle) {
    std::mt19937_64 rng(33);
    for (int t = 0; t < 100; ++t) {
        const index_t m = 1 + static_cast<index_t>(rng() % 30);
        const index_t n = 1 + static_cast<index_t>(rng() % 20);
        const QMatrix A = random_qmatrix(m, n, rng);
        const QsvdResult r = qsvd(A);
        expect_valid_qsvd(A, r);
        if (t % 10 == 0) {
            bool grouped = false;
            const auto oracle = test::counterpart_singular_values(A, &grouped);
            EXPECT_TRUE(grouped);
            ASSERT_EQ(oracle.size(), r.S.size());
            for (std::size_t i = 0; i < oracle.size(); ++i) EXPECT_NEAR(r.S[i], oracle[i], 1e-10 * oracle[0]);
        }
        EXPECT_EQ(singular_values(A), r.S);
    }
}

TEST(Qsvd, TruncationIsOptimal) {
    std::mt19937_64 rng(34);
    for (int t = 0; t < 20; ++t) {
        const QMatrix A = random_qmatrix(12, 9, rng);
        const auto s = singular_values(A);
        for (index_t k : {1, 4, 8}) {
            const QsvdResult r = qsvd_truncate(A, k);
            ASSERT_EQ(r.S.size(), static_cast<std::size_t>(k));
            const double err = spectral_norm(A - reconstruct(r.U, r.S, r.V));
            EXPECT_NEAR(err, s[static_cast<std::size_t>(k)], 1e-10 * s[static_cast<std::size_t>(k)]);
        }
    }
    EXPECT_THROW(qsvd_truncate(QMatrix(3, 2), 3), InvalidArgument);
}

TEST(EigHermitian, RealDiagonal) {
    const EigResult r = eig_hermitian(diag({2.0, 5.0}, 2, 2));
    EXPECT_EQ(r.Lambda, (std::vector<double>{5.0, 2.0}));
    EXPECT_LT(abs(r.V(0, 1)) - 1.0, 1e-15);
}

TEST(EigHermitian, GramMatrixMatchesSquaredSingularValues) {
    std::mt19937_64 rng(35);
    for (int t = 0; t < 30; ++t) {
        const QMatrix B = random_qmatrix(4, 6, rng);
        const QMatrix A = B * adjoint(B);
        const EigResult r = eig_hermitian(A);
        const auto s = singular_values(B);
        for (std::size_t i = 0; i < s.size(); ++i) EXPECT_NEAR(r.Lambda[i], s[i] * s[i], 1e-10 * s[i] * s[i]);
        EXPECT_LT(test::orthogonality_defect(r.V), 1e-13);
        EXPECT_LT(frobenius_norm(A * r.V - scale_columns(r.V, r.Lambda)), 100 * eps * 4 * frobenius_norm(A));
    }
}

TEST(EigHermitian, CounterpartEigenvaluesHaveMultiplicityFour) {
    std::mt19937_64 rng(36);
    const QMatrix B = random_qmatrix(5, 5, rng);
    const QMatrix A = B + adjoint(B);
    const auto lambda = eigenvalues_hermitian(A);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(to_eigen(real_counterpart(A)));
    for (std::size_t i = 0; i < lambda.size(); ++i)
        for (int c = 0; c < 4; ++c)
            EXPECT_NEAR(es.eigenvalues()(19 - 4 * static_cast<int>(i) - c), lambda[i], 1e-12 * frobenius_norm(A));
}

TEST(EigHermitian, RejectsNonHermitian) {
    QMatrix A(2, 2);
    A.set(0, 1, Quaternion::i());
    EXPECT_THROW(eig_hermitian(A), NotHermitian);
    A.set(1, 0, Quaternion::i());  // i^* = -i, so still not Hermitian
    EXPECT_THROW(eig_hermitian(A), NotHermitian);
    A.set(1, 0, -Quaternion::i());
    EXPECT_NO_THROW(eig_hermitian(A));
}

TEST(SpectralNorm, SmallCases) {
    EXPECT_NEAR(spectral_norm(QMatrix::identity(5)), 1.0, 1e-15);
    QMatrix s(1, 1);
    s.set(0, 0, Quaternion(0, 2, 0, 0));
    EXPECT_NEAR(spectral_norm(s), 2.0, 1e-15);
    std::mt19937_64 rng(37);
    const QMatrix A = random_qmatrix(10, 8, rng);
    const double oracle = test::spectral_norm_oracle(A);
    EXPECT_NEAR(spectral_norm(A), oracle, 1e-9 * oracle);
}

TEST(SpectralNorm, PowerIterationOnLargeInput) {
    std::mt19937_64 rng(38);
    // Rank-one spike on top of noise gives a clear gap.
    const QMatrix u = random_qmatrix(90, 1, rng), v = random_qmatrix(70, 1, rng);
    const QMatrix A = 5.0 * (u * adjoint(v)) + random_qmatrix(90, 70, rng);
    const double power = spectral_norm(A);
    const double dense = spectral_norm(A, {.dense_threshold = 1000});
    EXPECT_NEAR(power, dense, 1e-9 * dense);

    try {
        spectral_norm(A, {.max_iterations = 2});
        FAIL() << "expected NoConvergence";
    } catch (const NoConvergence& e) {
        EXPECT_GT(e.best_estimate(), 0.5 * dense);
    }
}

TEST(EigHermitian, StronglyGradedSpectrum) {
    // Eigenvalues 1, 0.1, ..., 1e-59: most sit far below roundoff of ||A||.
    const int n = 60;
    std::mt19937_64 rng(61);
    std::normal_distribution<double> g;
    Eigen::MatrixXd X(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) X(i, j) = g(rng);
    const Eigen::MatrixXd Q = Eigen::HouseholderQR<Eigen::MatrixXd>(X).householderQ();
    Eigen::VectorXd lam(n);
    for (int i = 0; i < n; ++i) lam(i) = std::pow(0.1, i);
    const Eigen::MatrixXd S = Q * lam.asDiagonal() * Q.transpose();
    const QMatrix A = QMatrix::from_real(test::from_eigen(0.5 * (S + S.transpose())));

    const EigResult r = eig_hermitian(A);
    for (int i = 0; i < n; ++i) EXPECT_NEAR(r.Lambda[static_cast<std::size_t>(i)], lam(i), 1e-13);
    EXPECT_LT(frobenius_norm(A * r.V - scale_columns(r.V, r.Lambda)), 1e-13);
}

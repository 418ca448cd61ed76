#include "quat/real_kernels.hpp"

#include "quat/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace quat {

namespace {

constexpr double eps = std::numeric_limits<double>::epsilon();

struct Rotation {
    double c = 1.0;
    double s = 0.0;
    double r = 0.0;
};

// (a, b) -> (r, 0) with r >= 0 when b != 0.
Rotation givens(double a, double b) {
    if (b == 0.0) return {1.0, 0.0, a};
    const double r = std::hypot(a, b);
    return {a / r, b / r, r};
}

// Factor columns are stored transposed (one contiguous row per column), so
// rotating columns a and b of U touches two contiguous rows of Ut.
void rotate(RealMatrix& Xt, index_t a, index_t b, double c, double s) {
    if (Xt.rows() == 0) return;
    double* xa = &Xt(a, 0);
    double* xb = &Xt(b, 0);
    for (index_t i = 0; i < Xt.cols(); ++i) {
        const double ta = xa[i], tb = xb[i];
        xa[i] = c * ta + s * tb;
        xb[i] = -s * ta + c * tb;
    }
}

std::vector<index_t> descending_order(const std::vector<double>& v) {
    std::vector<index_t> order(v.size());
    std::iota(order.begin(), order.end(), index_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](index_t a, index_t b) { return v[static_cast<std::size_t>(a)] > v[static_cast<std::size_t>(b)]; });
    return order;
}

// Columns of the result are the rows of Xt in the given order.
RealMatrix gather_columns(const RealMatrix& Xt, const std::vector<index_t>& order) {
    RealMatrix X(Xt.cols(), static_cast<index_t>(order.size()));
    for (index_t j = 0; j < static_cast<index_t>(order.size()); ++j)
        for (index_t i = 0; i < Xt.cols(); ++i) X(i, j) = Xt(order[static_cast<std::size_t>(j)], i);
    return X;
}

} // namespace

BidiagSvd bidiag_svd(std::vector<double> d, std::vector<double> e, bool want_vectors) {
    const index_t n = static_cast<index_t>(d.size());
    if (n > 0 && static_cast<index_t>(e.size()) != n - 1)
        throw InvalidArgument("bidiag_svd: superdiagonal must have length n - 1");

    RealMatrix Ut = want_vectors ? RealMatrix::identity(n) : RealMatrix();
    RealMatrix Vt = want_vectors ? RealMatrix::identity(n) : RealMatrix();

    double anorm = 0.0;
    for (index_t i = 0; i < n; ++i)
        anorm = std::max(anorm, std::abs(d[i]) + (i + 1 < n ? std::abs(e[i]) : 0.0));

    const long max_sweeps = 30L * std::max<index_t>(n, 1);
    long sweeps = 0;

    while (true) {
        for (index_t i = 0; i + 1 < n; ++i)
            if (std::abs(e[i]) <= eps * (std::abs(d[i]) + std::abs(d[i + 1]))) e[i] = 0.0;
        for (index_t i = 0; i < n; ++i)
            if (std::abs(d[i]) <= eps * anorm) d[i] = 0.0;

        // Trailing diagonal part is converged; [p, q] is the last unreduced block.
        index_t q = n - 1;
        while (q > 0 && e[q - 1] == 0.0) --q;
        if (q <= 0) break;
        index_t p = q - 1;
        while (p > 0 && e[p - 1] != 0.0) --p;

        // A zero on the diagonal decouples the block: rotate the coupling away.
        bool deflated = false;
        for (index_t i = p; i < q && !deflated; ++i) {
            if (d[i] != 0.0) continue;
            double f = e[i];
            e[i] = 0.0;
            for (index_t j = i + 1; j <= q; ++j) {
                const Rotation g = givens(d[j], f);
                d[j] = g.r;
                if (want_vectors) rotate(Ut, j, i, g.c, g.s);
                if (j < q) {
                    f = -g.s * e[j];
                    e[j] = g.c * e[j];
                }
            }
            deflated = true;
        }
        if (!deflated && d[q] == 0.0) {
            double f = e[q - 1];
            e[q - 1] = 0.0;
            for (index_t j = q - 1; j >= p; --j) {
                const Rotation g = givens(d[j], f);
                d[j] = g.r;
                if (want_vectors) rotate(Vt, j, q, g.c, g.s);
                if (j > p) {
                    f = -g.s * e[j - 1];
                    e[j - 1] = g.c * e[j - 1];
                }
            }
            deflated = true;
        }
        if (deflated) continue;

        if (++sweeps > max_sweeps)
            throw NoConvergence("bidiag_svd: no convergence after " + std::to_string(max_sweeps) + " sweeps");

        // Wilkinson shift from the trailing 2x2 block of B^T B.
        const double dm = d[q - 1], dn = d[q], em = e[q - 1];
        const double emm = q - 1 > p ? e[q - 2] : 0.0;
        const double t11 = dm * dm + emm * emm, t12 = dm * em, t22 = dn * dn + em * em;
        double mu = t22;
        if (t12 != 0.0) {
            const double delta = 0.5 * (t11 - t22);
            const double denom = delta + std::copysign(std::hypot(delta, t12), delta == 0.0 ? 1.0 : delta);
            mu = t22 - t12 * t12 / denom;
        }

        double y = d[p] * d[p] - mu;
        double z = d[p] * e[p];
        for (index_t k = p; k < q; ++k) {
            Rotation g = givens(y, z);
            if (k > p) e[k - 1] = g.r;
            double dk = d[k], ek = e[k];
            d[k] = g.c * dk + g.s * ek;
            e[k] = -g.s * dk + g.c * ek;
            const double bulge = g.s * d[k + 1];
            d[k + 1] = g.c * d[k + 1];
            if (want_vectors) rotate(Vt, k, k + 1, g.c, g.s);

            g = givens(d[k], bulge);
            d[k] = g.r;
            ek = e[k];
            const double dk1 = d[k + 1];
            e[k] = g.c * ek + g.s * dk1;
            d[k + 1] = -g.s * ek + g.c * dk1;
            if (k + 1 < q) {
                z = g.s * e[k + 1];
                e[k + 1] = g.c * e[k + 1];
                y = e[k];
            }
            if (want_vectors) rotate(Ut, k, k + 1, g.c, g.s);
        }
    }

    for (index_t i = 0; i < n; ++i) {
        if (d[i] < 0.0) {
            d[i] = -d[i];
            if (want_vectors)
                for (index_t c = 0; c < n; ++c) Vt(i, c) = -Vt(i, c);
        }
    }

    const std::vector<index_t> order = descending_order(d);
    BidiagSvd out;
    out.s.resize(static_cast<std::size_t>(n));
    for (index_t i = 0; i < n; ++i) out.s[static_cast<std::size_t>(i)] = d[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])];
    if (want_vectors) {
        out.U = gather_columns(Ut, order);
        out.V = gather_columns(Vt, order);
    }
    return out;
}

BidiagSvd real_bidiag_svd(const RealMatrix& D, bool want_vectors) {
    if (D.rows() != D.cols()) throw InvalidArgument("real_bidiag_svd: matrix must be square");
    const index_t n = D.rows();
    std::vector<double> d(static_cast<std::size_t>(n)), e(static_cast<std::size_t>(std::max<index_t>(n - 1, 0)));
    for (index_t i = 0; i < n; ++i)
        for (index_t j = 0; j < n; ++j) {
            if (j == i)
                d[static_cast<std::size_t>(i)] = D(i, j);
            else if (j == i + 1)
                e[static_cast<std::size_t>(i)] = D(i, j);
            else if (D(i, j) != 0.0)
                throw InvalidArgument("real_bidiag_svd: matrix is not upper bidiagonal");
        }
    return bidiag_svd(std::move(d), std::move(e), want_vectors);
}

TridiagEig tridiag_eig(std::vector<double> d, std::vector<double> e, bool want_vectors) {
    const index_t n = static_cast<index_t>(d.size());
    if (n > 0 && static_cast<index_t>(e.size()) != n - 1)
        throw InvalidArgument("tridiag_eig: off-diagonal must have length n - 1");
    e.push_back(0.0);

    RealMatrix Zt = want_vectors ? RealMatrix::identity(n) : RealMatrix();

    // Off-diagonals below eps * ||T|| are dropped even when the neighbouring
    // diagonal is far smaller; otherwise strongly graded spectra can stall.
    double anorm = 0.0;
    for (index_t i = 0; i < n; ++i) anorm = std::max(anorm, std::abs(d[i]) + std::abs(e[i]) + (i > 0 ? std::abs(e[i - 1]) : 0.0));
    const double floor = eps * anorm;

    for (index_t l = 0; l < n; ++l) {
        int iter = 0;
        while (true) {
            index_t m = l;
            for (; m < n - 1; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= eps * dd || std::abs(e[m]) <= floor) break;
            }
            if (m == l) break;
            if (++iter > 30)
                throw NoConvergence("tridiag_eig: no convergence for eigenvalue " + std::to_string(l));

            double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            double r = std::hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
            double s = 1.0, c = 1.0, p = 0.0;
            bool underflow = false;
            for (index_t i = m - 1; i >= l; --i) {
                double f = s * e[i];
                const double b = c * e[i];
                r = std::hypot(f, g);
                e[i + 1] = r;
                if (r == 0.0) {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                if (want_vectors) {
                    // columns i and i+1 of Z
                    double* zi = &Zt(i, 0);
                    double* zi1 = &Zt(i + 1, 0);
                    for (index_t k = 0; k < n; ++k) {
                        f = zi1[k];
                        zi1[k] = s * zi[k] + c * f;
                        zi[k] = c * zi[k] - s * f;
                    }
                }
            }
            if (underflow) continue;
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }

    const std::vector<index_t> order = descending_order(d);
    TridiagEig out;
    out.lambda.resize(static_cast<std::size_t>(n));
    for (index_t i = 0; i < n; ++i) out.lambda[static_cast<std::size_t>(i)] = d[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])];
    if (want_vectors) out.Z = gather_columns(Zt, order);
    return out;
}

} // namespace quat

#include "quat/householder.hpp"

#include "quat/errors.hpp"
#include "quat/execution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace quat {

namespace {

// Raw access to the four part slabs of a QMatrix.
struct Parts {
    double* p[4];
    index_t ld;

    explicit Parts(QMatrix& A) : ld(A.cols()) {
        for (int k = 0; k < 4; ++k) p[k] = A.part(k).data;
    }
    Quaternion get(index_t i, index_t j) const {
        const index_t o = i * ld + j;
        return {p[0][o], p[1][o], p[2][o], p[3][o]};
    }
    void put(index_t i, index_t j, const Quaternion& q) const {
        const index_t o = i * ld + j;
        p[0][o] = q.w;
        p[1][o] = q.x;
        p[2][o] = q.y;
        p[3][o] = q.z;
    }
};

constexpr index_t column_chunk = 64;

bool worth_threads(index_t rows, index_t cols) {
    return kernel_threads() > 1 && static_cast<long long>(rows) * cols >= 4096;
}

// Columns [c_begin, c_end) of rows [r0, r0+s): x <- (I - 2 v v^*) x.
// Row-major friendly: the inner loop runs along a row.
void reflect_columns(const Reflector& h, Parts A, index_t r0, index_t c_begin, index_t c_end) {
    const index_t s = h.size();
    std::vector<Quaternion> dots(static_cast<std::size_t>(c_end - c_begin));
    for (index_t i = 0; i < s; ++i) {
        const Quaternion vi = conj(h.v[static_cast<std::size_t>(i)]);
        if (vi == Quaternion{}) continue;
        for (index_t c = c_begin; c < c_end; ++c) dots[static_cast<std::size_t>(c - c_begin)] += vi * A.get(r0 + i, c);
    }
    for (index_t i = 0; i < s; ++i) {
        const Quaternion vi2 = 2.0 * h.v[static_cast<std::size_t>(i)];
        if (vi2 == Quaternion{}) continue;
        for (index_t c = c_begin; c < c_end; ++c)
            A.put(r0 + i, c, A.get(r0 + i, c) - vi2 * dots[static_cast<std::size_t>(c - c_begin)]);
    }
}

// Row r, columns [c0, c0+s): x <- x (I - 2 v v^*).
void reflect_row(const Reflector& h, Parts A, index_t r, index_t c0) {
    const index_t s = h.size();
    Quaternion t;
    for (index_t i = 0; i < s; ++i) t += A.get(r, c0 + i) * h.v[static_cast<std::size_t>(i)];
    t *= 2.0;
    for (index_t i = 0; i < s; ++i)
        A.put(r, c0 + i, A.get(r, c0 + i) - t * conj(h.v[static_cast<std::size_t>(i)]));
}

void check_left(const Reflector& h, const QMatrix& A, index_t r0, index_t& c_begin, index_t& c_end) {
    if (c_end < 0) c_end = A.cols();
    if (r0 < 0 || r0 + h.size() > A.rows() || c_begin < 0 || c_end > A.cols())
        throw DimensionMismatch("reflector application outside the matrix");
}

void check_right(const Reflector& h, const QMatrix& A, index_t c0, index_t& r_begin, index_t& r_end) {
    if (r_end < 0) r_end = A.rows();
    if (c0 < 0 || c0 + h.size() > A.cols() || r_begin < 0 || r_end > A.rows())
        throw DimensionMismatch("reflector application outside the matrix");
}

template <typename Body>
void for_column_chunks(index_t c_begin, index_t c_end, index_t rows, Body body) {
    const index_t chunks = (c_end - c_begin + column_chunk - 1) / column_chunk;
#pragma omp parallel for schedule(static) if (worth_threads(rows, c_end - c_begin))
    for (index_t b = 0; b < chunks; ++b) {
        const index_t lo = c_begin + b * column_chunk;
        body(lo, std::min(c_end, lo + column_chunk));
    }
}

} // namespace

HouseholderVector householder_reflector(std::span<const Quaternion> u) {
    HouseholderVector out;
    out.v.assign(u.begin(), u.end());
    const double unorm = norm(u);
    if (u.empty() || unorm == 0.0) {
        std::fill(out.v.begin(), out.v.end(), Quaternion{});
        out.a = Quaternion{};
        return out;
    }
    const double u1 = abs(u[0]);
    out.a = u1 != 0.0 ? -(u[0] / u1) * unorm : Quaternion{-unorm};
    out.v[0] -= out.a;
    const double vnorm = norm(out.v);
    for (Quaternion& q : out.v) q /= vnorm;
    return out;
}

Reflector householder_h0(std::span<const Quaternion> u) {
    HouseholderVector hv = householder_reflector(u);
    Reflector h;
    h.v = std::move(hv.v);
    const double amod = abs(hv.a);
    h.phase = amod > 0.0 ? conj(hv.a) / amod : Quaternion{1.0};
    h.beta = amod;
    return h;
}

std::vector<Quaternion> reflect(const Reflector& h, std::span<const Quaternion> u) {
    if (static_cast<index_t>(u.size()) != h.size()) throw DimensionMismatch("reflect: length mismatch");
    QMatrix x(h.size(), 1);
    for (index_t i = 0; i < h.size(); ++i) x.set(i, 0, u[static_cast<std::size_t>(i)]);
    apply_left(h, x, 0);
    return column(x, 0);
}

std::vector<Quaternion> reflect_adjoint(const Reflector& h, std::span<const Quaternion> u) {
    if (static_cast<index_t>(u.size()) != h.size()) throw DimensionMismatch("reflect_adjoint: length mismatch");
    QMatrix x(h.size(), 1);
    for (index_t i = 0; i < h.size(); ++i) x.set(i, 0, u[static_cast<std::size_t>(i)]);
    apply_left_adjoint(h, x, 0);
    return column(x, 0);
}

void apply_left(const Reflector& h, QMatrix& A, index_t r0, index_t col_begin, index_t col_end) {
    check_left(h, A, r0, col_begin, col_end);
    if (h.size() == 0 || col_end <= col_begin) return;
    const Parts P(A);
    for_column_chunks(col_begin, col_end, h.size(), [&](index_t lo, index_t hi) {
        reflect_columns(h, P, r0, lo, hi);
        for (index_t c = lo; c < hi; ++c) P.put(r0, c, h.phase * P.get(r0, c));
    });
}

void apply_left_adjoint(const Reflector& h, QMatrix& A, index_t r0, index_t col_begin, index_t col_end) {
    check_left(h, A, r0, col_begin, col_end);
    if (h.size() == 0 || col_end <= col_begin) return;
    const Parts P(A);
    const Quaternion phase_adj = conj(h.phase);
    for_column_chunks(col_begin, col_end, h.size(), [&](index_t lo, index_t hi) {
        for (index_t c = lo; c < hi; ++c) P.put(r0, c, phase_adj * P.get(r0, c));
        reflect_columns(h, P, r0, lo, hi);
    });
}

void apply_right(const Reflector& h, QMatrix& A, index_t c0, index_t row_begin, index_t row_end) {
    check_right(h, A, c0, row_begin, row_end);
    if (h.size() == 0) return;
    const Parts P(A);
#pragma omp parallel for schedule(static) if (worth_threads(row_end - row_begin, h.size()))
    for (index_t r = row_begin; r < row_end; ++r) {
        P.put(r, c0, P.get(r, c0) * h.phase);
        reflect_row(h, P, r, c0);
    }
}

void apply_right_adjoint(const Reflector& h, QMatrix& A, index_t c0, index_t row_begin, index_t row_end) {
    check_right(h, A, c0, row_begin, row_end);
    if (h.size() == 0) return;
    const Parts P(A);
    const Quaternion phase_adj = conj(h.phase);
#pragma omp parallel for schedule(static) if (worth_threads(row_end - row_begin, h.size()))
    for (index_t r = row_begin; r < row_end; ++r) {
        reflect_row(h, P, r, c0);
        P.put(r, c0, P.get(r, c0) * phase_adj);
    }
}

void apply_reflectors_adjoint(std::span<const Reflector> hs, index_t offset, QMatrix& X) {
    for (index_t j = static_cast<index_t>(hs.size()) - 1; j >= 0; --j)
        apply_left_adjoint(hs[static_cast<std::size_t>(j)], X, offset + j);
}

QrResult householder_qr(const QMatrix& A, bool thin) {
    const index_t m = A.rows(), n = A.cols();
    if (thin && m < n) throw InvalidArgument("householder_qr: thin mode needs rows >= cols");
    const index_t steps = std::min(m, n);
    QMatrix work = A;
    std::vector<Reflector> hs;
    hs.reserve(static_cast<std::size_t>(steps));
    for (index_t j = 0; j < steps; ++j) {
        std::vector<Quaternion> u(static_cast<std::size_t>(m - j));
        for (index_t i = j; i < m; ++i) u[static_cast<std::size_t>(i - j)] = work(i, j);
        Reflector h = householder_h0(u);
        apply_left(h, work, j, j + 1);
        work.set(j, j, Quaternion{h.beta});
        for (index_t i = j + 1; i < m; ++i) work.set(i, j, Quaternion{});
        hs.push_back(std::move(h));
    }

    const index_t l = thin ? n : m;
    QrResult out;
    out.R = block(work, 0, 0, l, n);
    out.Q = QMatrix(m, l);
    for (index_t i = 0; i < l; ++i) out.Q.at(0, i, i) = 1.0;
    apply_reflectors_adjoint(hs, 0, out.Q);
    return out;
}

QrResult qmgs(const QMatrix& A, const QmgsOptions& options) {
    const index_t m = A.rows(), n = A.cols();
    if (m < n) throw InvalidArgument("qmgs: needs rows >= cols");
    const double tol = options.rank_tol_factor * static_cast<double>(n) *
                       std::numeric_limits<double>::epsilon() * frobenius_norm(A);

    std::vector<std::vector<Quaternion>> q(static_cast<std::size_t>(n));
    QrResult out;
    out.R = QMatrix(n, n);
    const int sweeps = options.reorthogonalize ? 2 : 1;
    for (index_t k = 0; k < n; ++k) {
        std::vector<Quaternion> v = column(A, k);
        for (int sweep = 0; sweep < sweeps; ++sweep) {
            for (index_t j = 0; j < k; ++j) {
                const auto& qj = q[static_cast<std::size_t>(j)];
                Quaternion r;
                for (index_t i = 0; i < m; ++i) r += conj(qj[static_cast<std::size_t>(i)]) * v[static_cast<std::size_t>(i)];
                for (index_t i = 0; i < m; ++i) v[static_cast<std::size_t>(i)] -= qj[static_cast<std::size_t>(i)] * r;
                out.R.set(j, k, out.R(j, k) + r);
            }
        }
        const double rkk = norm(v);
        if (!(rkk > tol))
            throw RankDeficient("qmgs: column " + std::to_string(k) + " is numerically dependent", k);
        for (Quaternion& x : v) x /= rkk;
        out.R.set(k, k, Quaternion{rkk});
        q[static_cast<std::size_t>(k)] = std::move(v);
    }

    out.Q = QMatrix(m, n);
    for (index_t j = 0; j < n; ++j)
        for (index_t i = 0; i < m; ++i) out.Q.set(i, j, q[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]);
    return out;
}

} // namespace quat

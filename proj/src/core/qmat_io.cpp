#include "quat/qmat_io.hpp"

#include "quat/errors.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace quat::io {

namespace {

// Next line that is neither a comment nor blank; false at EOF.
bool next_content_line(std::istream& is, std::string& line) {
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        return true;
    }
    return false;
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open " + path.string());
    return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path.string());
    return out;
}

} // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_qmat(std::ostream& os, const QMatrix& A) {
    os << "QMAT " << A.rows() << ' ' << A.cols() << '\n';
    for (index_t i = 0; i < A.rows(); ++i)
        for (index_t j = 0; j < A.cols(); ++j) {
            const Quaternion q = A(i, j);
            os << format_double(q.w) << ' ' << format_double(q.x) << ' ' << format_double(q.y)
               << ' ' << format_double(q.z) << '\n';
        }
}

void write_qmat(const std::filesystem::path& path, const QMatrix& A) {
    auto out = open_out(path);
    write_qmat(out, A);
    if (!out) throw Error("write failed: " + path.string());
}

QMatrix read_qmat(std::istream& is) {
    std::string line;
    if (!next_content_line(is, line)) throw FormatError("QMAT: empty input");
    std::istringstream header(line);
    std::string magic;
    long long m = -1, n = -1;
    if (!(header >> magic >> m >> n) || magic != "QMAT" || m < 0 || n < 0)
        throw FormatError("QMAT: bad header '" + line + "'");

    QMatrix A(static_cast<index_t>(m), static_cast<index_t>(n));
    for (index_t e = 0; e < m * n; ++e) {
        if (!next_content_line(is, line))
            throw FormatError("QMAT: expected " + std::to_string(m * n) + " entries, got " +
                              std::to_string(e));
        std::istringstream row(line);
        Quaternion q;
        std::string extra;
        if (!(row >> q.w >> q.x >> q.y >> q.z) || (row >> extra))
            throw FormatError("QMAT: bad entry line '" + line + "'");
        A.set(e / n, e % n, q);
    }
    return A;
}

QMatrix read_qmat(const std::filesystem::path& path) {
    auto in = open_in(path);
    return read_qmat(in);
}

void write_qsvd(std::ostream& os, std::span<const double> sigma) {
    os << "QSVD " << sigma.size() << '\n';
    for (double s : sigma) os << format_double(s) << '\n';
}

void write_qsvd(const std::filesystem::path& path, std::span<const double> sigma) {
    auto out = open_out(path);
    write_qsvd(out, sigma);
    if (!out) throw Error("write failed: " + path.string());
}

std::vector<double> read_qsvd(std::istream& is) {
    std::string line;
    if (!next_content_line(is, line)) throw FormatError("QSVD: empty input");
    std::istringstream header(line);
    std::string magic;
    long long r = -1;
    if (!(header >> magic >> r) || magic != "QSVD" || r < 0)
        throw FormatError("QSVD: bad header '" + line + "'");
    std::vector<double> sigma;
    sigma.reserve(static_cast<std::size_t>(r));
    for (long long i = 0; i < r; ++i) {
        if (!next_content_line(is, line)) throw FormatError("QSVD: truncated value list");
        std::istringstream row(line);
        double v;
        if (!(row >> v)) throw FormatError("QSVD: bad value line '" + line + "'");
        sigma.push_back(v);
    }
    return sigma;
}

std::vector<double> read_qsvd(const std::filesystem::path& path) {
    auto in = open_in(path);
    return read_qsvd(in);
}

} // namespace quat::io

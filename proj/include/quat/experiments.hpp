#pragma once

#include "quat/bounds.hpp"
#include "quat/qmatrix.hpp"
#include "quat/randomized.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace quat {

// CSV cells use 17 significant digits.
std::string csv_number(double v);

// ---- compress: rank-k approximations of one matrix -------------------------

struct CompressOptions {
    std::vector<index_t> ks{10};
    index_t p = 4;
    int q = 0;
    std::uint64_t seed = 0;
    Ortho ortho = Ortho::householder;
};

struct CompressRow {
    index_t k = 0;
    int q = 0;
    double psnr = 0.0;
    double rel_err_2 = 0.0;  // ||A - A_k||_2 / ||A||_2
    double rel_err_F = 0.0;
    double wall_time = 0.0;  // seconds spent in randsvdQ
};

struct CompressResult {
    std::vector<CompressRow> rows;  // one per k, in input order
    QMatrix last;                   // approximation for the last k
};

// Rank-k approximation U S V^* from randsvdQ for each k in opts.ks.
CompressResult run_compress(const QMatrix& A, const CompressOptions& opts);
void write_compress_csv(std::ostream& os, const std::vector<CompressRow>& rows);

// ---- histogram: repeated runs on a matrix with geometric spectrum ----------

struct HistogramOptions {
    index_t m = 100, n = 80;
    double rate = 0.9;
    index_t k = 10, p = 4;
    int q = 0;
    long trials = 1000;
    std::uint64_t seed = 0;
};

struct HistogramTrial {
    double err_2 = 0.0;  // ||A - Q Q^* A||_2
    double err_F = 0.0;
};

struct HistogramResult {
    std::vector<HistogramTrial> trials;
    std::vector<double> sigma;  // exact spectrum of the test matrix
    double eta_e_2 = 0.0;       // expected spectral bound at q
    double eta_e_F = 0.0;       // expected Frobenius bound
    double eta_d_2 = 0.0;       // simple spectral deviation bound
    double eta_d_F = 0.0;       // Frobenius deviation bound, u = 2 sqrt(2p), t = e
    double failure_probability = 0.0;  // 3 e^(-4p)
    double mean_2 = 0.0, mean_F = 0.0;
    long exceed_2 = 0, exceed_F = 0, exceed_any = 0;
};

// The deviation bounds are the q = 0 statements; for q > 0 they are reported
// unchanged as a reference.
HistogramResult run_histogram(const HistogramOptions& opts);
// Per-trial rows, then a "mean" row carrying the averages.
void write_histogram_csv(std::ostream& os, const HistogramResult& r);

// ---- wishart: pseudoinverse norms of quaternion Gaussian matrices ----------

struct WishartRow {
    std::string quantity;
    index_t m = 0, n = 0, k = 0, p = 0;
    int q = 0;
    long trials = 0;
    double estimate = 0.0, bound = 0.0, stderr_ = 0.0;
};

// Mean of ||G^+||_F^2 and ||G^+||_2 and their tail frequencies at t = 2 for an
// m x n Gaussian G, which plays the role of the k x (k+p) sketch block
// (k = m, p = n - m). Requires n - m >= 1.
std::vector<WishartRow> run_wishart(index_t m, index_t n, long trials, std::uint64_t seed);
void write_wishart_csv(std::ostream& os, const std::vector<WishartRow>& rows);

// ---- bounds -----------------------------------------------------------------

// "geom:<rate>:<n>" or a file with one value per line (a QSVD sidecar also
// works). Values are sorted descending.
std::vector<double> parse_spectrum(const std::string& arg);
void write_bounds_csv(std::ostream& os, const std::vector<BoundReport>& rows);

} // namespace quat

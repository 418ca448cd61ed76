#include "quat/experiments.hpp"

#include "quat/decomp.hpp"
#include "quat/errors.hpp"
#include "quat/execution.hpp"
#include "quat/image.hpp"
#include "quat/kernels.hpp"
#include "quat/qmat_io.hpp"
#include "quat/synthetic.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

namespace quat {

namespace {

QMatrix residual(const QMatrix& A, const QMatrix& Q) { return A - mat_mul(Q, adjoint_mul(Q, A)); }

double mean_of(const std::vector<double>& v) { return v.empty() ? 0.0 : kernels::pairwise_sum(v) / static_cast<double>(v.size()); }

} // namespace

std::string csv_number(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

CompressResult run_compress(const QMatrix& A, const CompressOptions& opts) {
    if (opts.ks.empty()) throw InvalidArgument("run_compress: no target ranks");
    const double norm2 = spectral_norm(A);
    const double normF = frobenius_norm(A);
    if (norm2 == 0.0) throw InvalidArgument("run_compress: zero matrix");

    CompressResult out;
    for (index_t k : opts.ks) {
        RandConfig cfg;
        cfg.k = k;
        cfg.p = opts.p;
        cfg.q = opts.q;
        cfg.seed = opts.seed;
        cfg.ortho = opts.ortho;

        const auto t0 = std::chrono::steady_clock::now();
        const LowRankApprox lr = randsvdQ(A, cfg);
        const auto t1 = std::chrono::steady_clock::now();

        QMatrix approx = mat_mul(scale_columns(lr.U, lr.S), adjoint(lr.V));
        const QMatrix diff = A - approx;
        CompressRow row;
        row.k = k;
        row.q = opts.q;
        row.psnr = psnr(approx, A);
        row.rel_err_2 = spectral_norm(diff) / norm2;
        row.rel_err_F = frobenius_norm(diff) / normF;
        row.wall_time = std::chrono::duration<double>(t1 - t0).count();
        out.rows.push_back(row);
        out.last = std::move(approx);
    }
    return out;
}

void write_compress_csv(std::ostream& os, const std::vector<CompressRow>& rows) {
    os << "k,q,psnr,rel_err_2,rel_err_F,wall_time\n";
    for (const CompressRow& r : rows)
        os << r.k << ',' << r.q << ',' << csv_number(r.psnr) << ',' << csv_number(r.rel_err_2) << ','
           << csv_number(r.rel_err_F) << ',' << csv_number(r.wall_time) << '\n';
}

HistogramResult run_histogram(const HistogramOptions& opts) {
    if (opts.trials < 1) throw InvalidArgument("run_histogram: trials must be >= 1");
    const SynthMatrix syn = synth_matrix(opts.m, opts.n, opts.rate, opts.seed);
    RandConfig base;
    base.k = opts.k;
    base.p = opts.p;
    base.q = opts.q;
    validate(base, opts.m, opts.n);

    HistogramResult r;
    r.sigma = syn.sigma;
    const SpectrumTail tail(syn.sigma, opts.k);
    const double u = 2.0 * std::sqrt(2.0 * static_cast<double>(opts.p));
    r.eta_e_2 = expected_spec_bound(tail, opts.p, opts.q);
    r.eta_e_F = expected_fro_bound(tail, opts.p);
    r.eta_d_2 = simple_spec_deviation(tail, opts.p);
    r.eta_d_F = deviation_bounds(tail, opts.p, u, std::numbers::e).fro;
    r.failure_probability = simple_deviation_failure(opts.p);

    r.trials.resize(static_cast<std::size_t>(opts.trials));
    const std::uint64_t trial_seed = derive_seed(opts.seed, 1);
    const int threads = kernel_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads) if (threads > 1)
    for (long i = 0; i < opts.trials; ++i) {
        RandConfig cfg = base;
        cfg.seed = derive_seed(trial_seed, static_cast<std::uint64_t>(i));
        const QMatrix R = residual(syn.A, randomized_range(syn.A, cfg));
        r.trials[static_cast<std::size_t>(i)] = {singular_values(R).front(), frobenius_norm(R)};
    }

    std::vector<double> e2, eF;
    for (const HistogramTrial& t : r.trials) {
        e2.push_back(t.err_2);
        eF.push_back(t.err_F);
        const bool over2 = t.err_2 > r.eta_d_2, overF = t.err_F > r.eta_d_F;
        r.exceed_2 += over2;
        r.exceed_F += overF;
        r.exceed_any += over2 || overF;
    }
    r.mean_2 = mean_of(e2);
    r.mean_F = mean_of(eF);
    return r;
}

void write_histogram_csv(std::ostream& os, const HistogramResult& r) {
    const std::string bounds = ',' + csv_number(r.eta_e_2) + ',' + csv_number(r.eta_e_F) + ',' +
                               csv_number(r.eta_d_2) + ',' + csv_number(r.eta_d_F) + '\n';
    os << "trial,err_2,err_F,eta_e_2,eta_e_F,eta_d_2,eta_d_F\n";
    for (std::size_t i = 0; i < r.trials.size(); ++i)
        os << i << ',' << csv_number(r.trials[i].err_2) << ',' << csv_number(r.trials[i].err_F) << bounds;
    os << "mean," << csv_number(r.mean_2) << ',' << csv_number(r.mean_F) << bounds;
}

std::vector<WishartRow> run_wishart(index_t m, index_t n, long trials, std::uint64_t seed) {
    if (m < 1 || n - m < 1) throw InvalidArgument("run_wishart: need 1 <= m <= n - 1");
    if (trials < 2) throw InvalidArgument("run_wishart: need at least 2 trials");
    const PinvSamples s = sample_pinv_norms(m, n, trials, seed);
    const PinvStats stats = pinv_stats(m, n);
    const PinvTail cap = pinv_tail_probs(m, n, 2.0);

    std::vector<double> fro2, spec, fro_hit, spec_hit;
    for (const PinvSample& x : s.samples) {
        fro2.push_back(x.fro2);
        spec.push_back(x.spec);
        fro_hit.push_back(x.fro2 > cap.fro_threshold ? 1.0 : 0.0);
        spec_hit.push_back(x.spec > cap.spec_threshold ? 1.0 : 0.0);
    }

    auto row = [&](const char* name, const std::vector<double>& v, double bound) {
        const MonteCarloEstimate e = summarize(v);
        WishartRow w;
        w.quantity = name;
        w.m = m;
        w.n = n;
        w.k = m;
        w.p = n - m;
        w.trials = trials;
        w.estimate = e.mean;
        w.bound = bound;
        w.stderr_ = e.stderr_;
        return w;
    };
    return {row("pinv_fro2_mean", fro2, stats.efro2), row("pinv_spec_mean", spec, stats.espec_ub),
            row("pinv_fro2_tail_t2", fro_hit, cap.fro_cap), row("pinv_spec_tail_t2", spec_hit, cap.spec_cap)};
}

void write_wishart_csv(std::ostream& os, const std::vector<WishartRow>& rows) {
    os << "quantity,m,n,k,p,q,trials,estimate,bound,stderr\n";
    for (const WishartRow& w : rows)
        os << w.quantity << ',' << w.m << ',' << w.n << ',' << w.k << ',' << w.p << ',' << w.q << ',' << w.trials
           << ',' << csv_number(w.estimate) << ',' << csv_number(w.bound) << ',' << csv_number(w.stderr_) << '\n';
}

std::vector<double> parse_spectrum(const std::string& arg) {
    std::vector<double> s;
    if (arg.rfind("geom:", 0) == 0) {
        const std::size_t colon = arg.find(':', 5);
        if (colon == std::string::npos) throw InvalidArgument("spectrum: expected geom:<rate>:<n>");
        double rate = 0.0;
        long n = 0;
        try {
            std::size_t used = 0;
            rate = std::stod(arg.substr(5, colon - 5), &used);
            if (used != colon - 5) throw std::invalid_argument("rate");
            const std::string ns = arg.substr(colon + 1);
            n = std::stol(ns, &used);
            if (used != ns.size()) throw std::invalid_argument("n");
        } catch (const std::logic_error&) {
            throw InvalidArgument("spectrum: cannot parse '" + arg + "'");
        }
        if (!(rate > 0.0 && rate < 1.0) || n < 2) throw InvalidArgument("spectrum: need 0 < rate < 1 and n >= 2");
        return geometric_spectrum(n, rate);
    }

    std::ifstream in(arg);
    if (!in) throw FormatError("cannot open " + arg);
    std::string first;
    in >> first;
    in.clear();
    in.seekg(0);
    if (first == "QSVD") {
        s = io::read_qsvd(in);
    } else {
        std::string line;
        while (std::getline(in, line)) {
            const std::size_t hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            std::istringstream ls(line);
            double v;
            while (ls >> v) s.push_back(v);
            if (!ls.eof()) throw FormatError("spectrum: bad value in '" + line + "'");
        }
    }
    if (s.empty()) throw FormatError("spectrum: no values in " + arg);
    std::sort(s.begin(), s.end(), std::greater<>());
    return s;
}

void write_bounds_csv(std::ostream& os, const std::vector<BoundReport>& rows) {
    os << "k,p,q,u,t,expectation_fro,expectation_spec,deviation_fro,deviation_spec,deviation_failure,"
          "simple_deviation_spec,simple_deviation_failure\n";
    for (const BoundReport& r : rows)
        os << r.k << ',' << r.p << ',' << r.q << ',' << csv_number(r.u) << ',' << csv_number(r.t) << ','
           << csv_number(r.expectation_fro) << ',' << csv_number(r.expectation_spec) << ','
           << csv_number(r.deviation_fro) << ',' << csv_number(r.deviation_spec) << ','
           << csv_number(r.deviation_failure) << ',' << csv_number(r.simple_deviation_spec) << ','
           << csv_number(r.simple_deviation_failure) << '\n';
}

} // namespace quat

// quatrand: randomized quaternion SVD experiments.
//
// Exit codes: 0 success, 2 usage or input error, 3 numerical failure,
// 1 anything else (for example an unwritable output file).

#include "quat/bounds.hpp"
#include "quat/decomp.hpp"
#include "quat/eigenfaces.hpp"
#include "quat/errors.hpp"
#include "quat/execution.hpp"
#include "quat/experiments.hpp"
#include "quat/image.hpp"
#include "quat/qmat_io.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>

using namespace quat;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

// Writes to `path`, or stdout for "-".
template <class F>
void emit(const std::string& path, F&& write) {
    if (path == "-") {
        write(std::cout);
        return;
    }
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    write(out);
    if (!out) throw Error("write failed: " + path);
}

bool is_qmat(const std::string& path) { return std::filesystem::path(path).extension() == ".qmat"; }

const std::map<std::string, Ortho> kOrtho{{"householder", Ortho::householder}, {"qmgs", Ortho::qmgs}};

struct Common {
    index_t k = 10, p = 4;
    int q = 0;
    std::uint64_t seed = 0;
    std::string out = "-";
};

void add_rank_options(CLI::App* cmd, Common& c) {
    cmd->add_option("--p", c.p, "Oversampling")->check(CLI::PositiveNumber);
    cmd->add_option("--q", c.q, "Power-scheme steps")->check(CLI::NonNegativeNumber);
    cmd->add_option("--seed", c.seed, "Random seed");
    cmd->add_option("--out", c.out, "Output CSV path ('-' for stdout)");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Randomized quaternion SVD experiments"};
    app.require_subcommand(1);
    app.fallthrough();
    bool strict = false;
    app.add_flag("--strict", strict, "Single-threaded, fixed-order execution");

    // compress
    Common cc;
    std::string c_input, c_save;
    std::vector<index_t> c_ks{10};
    Ortho c_ortho = Ortho::householder;
    CLI::App* compress = app.add_subcommand("compress", "Low-rank approximation of an image or QMAT matrix");
    compress->add_option("--input", c_input, "PNG, P6 PPM or .qmat file")->required()->check(CLI::ExistingFile);
    compress->add_option("--k", c_ks, "Target rank(s)")->delimiter(',')->check(CLI::PositiveNumber);
    compress->add_option("--ortho", c_ortho, "householder or qmgs")
        ->transform(CLI::CheckedTransformer(kOrtho, CLI::ignore_case));
    compress->add_option("--save-image", c_save, "Write the last approximation as an image");
    add_rank_options(compress, cc);

    // histogram
    Common hc;
    HistogramOptions h_opts;
    CLI::App* histogram = app.add_subcommand("histogram", "Errors of repeated runs against the error bounds");
    histogram->add_option("--m", h_opts.m, "Rows")->check(CLI::PositiveNumber);
    histogram->add_option("--n", h_opts.n, "Columns")->check(CLI::PositiveNumber);
    histogram->add_option("--rate", h_opts.rate, "Singular value decay rate in (0, 1)");
    histogram->add_option("--k", hc.k, "Target rank")->check(CLI::PositiveNumber);
    histogram->add_option("--trials", h_opts.trials, "Number of trials")->check(CLI::PositiveNumber);
    add_rank_options(histogram, hc);

    // wishart
    index_t w_m = 5, w_n = 10;
    long w_trials = 5000;
    std::uint64_t w_seed = 0;
    std::string w_out = "-";
    CLI::App* wishart = app.add_subcommand("wishart", "Pseudoinverse norms of Gaussian quaternion matrices");
    wishart->add_option("--m", w_m, "Rows")->check(CLI::PositiveNumber);
    wishart->add_option("--n", w_n, "Columns")->check(CLI::PositiveNumber);
    wishart->add_option("--trials", w_trials, "Number of trials")->check(CLI::PositiveNumber);
    wishart->add_option("--seed", w_seed, "Random seed");
    wishart->add_option("--out", w_out, "Output CSV path ('-' for stdout)");

    // bounds
    Common bc;
    std::string b_spectrum;
    std::optional<double> b_u;
    double b_t = std::numbers::e;
    CLI::App* bounds = app.add_subcommand("bounds", "Evaluate the error bounds for a spectrum");
    bounds->add_option("--spectrum", b_spectrum, "File of singular values or geom:<rate>:<n>")->required();
    bounds->add_option("--k", bc.k, "Target rank")->check(CLI::PositiveNumber);
    bounds->add_option("--u", b_u, "Deviation parameter u (default 2 sqrt(2p))");
    bounds->add_option("--t", b_t, "Deviation parameter t (default e)");
    add_rank_options(bounds, bc);

    // eigenfaces
    Common ec;
    std::string e_train, e_test;
    CLI::App* eigenfaces = app.add_subcommand("eigenfaces", "Face recognition with randomized and exact bases");
    eigenfaces->add_option("--train-dir", e_train, "Directory of <person>_<idx>.png training images");
    eigenfaces->add_option("--test-dir", e_test, "Directory of test images");
    eigenfaces->add_option("--k", ec.k, "Number of eigenfaces")->check(CLI::PositiveNumber);
    add_rank_options(eigenfaces, ec);

    // svd
    std::string s_input, s_out;
    index_t s_k = 10;
    CLI::App* svd = app.add_subcommand("svd", "Exact truncated QSVD of a QMAT matrix");
    svd->add_option("--input", s_input, "QMAT file")->required()->check(CLI::ExistingFile);
    svd->add_option("--k", s_k, "Number of triplets")->check(CLI::NonNegativeNumber);
    svd->add_option("--out", s_out, "Sidecar path; U and V go to <out>.U.qmat and <out>.V.qmat")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    std::optional<ScopedExecution> mode;
    if (strict) mode.emplace(Execution::strict);

    try {
        if (*compress) {
            const QMatrix A = is_qmat(c_input) ? io::read_qmat(c_input) : load_image(c_input);
            CompressOptions o;
            o.ks = c_ks;
            o.p = cc.p;
            o.q = cc.q;
            o.seed = cc.seed;
            o.ortho = c_ortho;
            const CompressResult r = run_compress(A, o);
            emit(cc.out, [&](std::ostream& os) { write_compress_csv(os, r.rows); });
            if (!c_save.empty()) save_image(r.last, c_save);
        } else if (*histogram) {
            h_opts.k = hc.k;
            h_opts.p = hc.p;
            h_opts.q = hc.q;
            h_opts.seed = hc.seed;
            const HistogramResult r = run_histogram(h_opts);
            emit(hc.out, [&](std::ostream& os) { write_histogram_csv(os, r); });
            std::cerr << "exceed spectral " << r.exceed_2 << ", Frobenius " << r.exceed_F << ", either "
                      << r.exceed_any << " of " << r.trials.size() << " (predicted rate "
                      << csv_number(r.failure_probability) << ")\n";
        } else if (*wishart) {
            const std::vector<WishartRow> rows = run_wishart(w_m, w_n, w_trials, w_seed);
            emit(w_out, [&](std::ostream& os) { write_wishart_csv(os, rows); });
        } else if (*bounds) {
            const SpectrumTail tail(parse_spectrum(b_spectrum), bc.k);
            const double u = b_u ? *b_u : 2.0 * std::sqrt(2.0 * static_cast<double>(bc.p));
            const BoundReport r = evaluate_bounds(tail, bc.p, bc.q, u, b_t);
            emit(bc.out, [&](std::ostream& os) { write_bounds_csv(os, {r}); });
        } else if (*eigenfaces) {
            if (e_train.empty() != e_test.empty())
                throw InvalidArgument("--train-dir and --test-dir go together");
            FaceDataset data;
            if (e_train.empty()) {
                SyntheticFaceOptions so;
                so.seed = ec.seed;
                data = synthetic_faces(so);
            } else {
                data = load_face_dirs(e_train, e_test);
            }
            RandConfig cfg;
            cfg.k = ec.k;
            cfg.p = ec.p;
            cfg.q = ec.q;
            cfg.seed = ec.seed;
            emit(ec.out, [&](std::ostream& os) {
                os << "basis,k,p,q,seed,train,test,accuracy,wall_time\n";
                for (FaceBasis b : {FaceBasis::randomized, FaceBasis::exact}) {
                    const auto t0 = std::chrono::steady_clock::now();
                    const EigenfaceModel m = eigenfaces_train(data, cfg, b);
                    const double t = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
                    os << (b == FaceBasis::randomized ? "randomized" : "exact") << ',' << cfg.k << ',' << cfg.p << ','
                       << cfg.q << ',' << cfg.seed << ',' << data.train.size() << ',' << data.test.size() << ','
                       << csv_number(eigenfaces_accuracy(m, data.test)) << ',' << csv_number(t) << '\n';
                }
            });
        } else if (*svd) {
            const QsvdResult r = qsvd_truncate(io::read_qmat(s_input), s_k);
            io::write_qsvd(s_out, r.S);
            io::write_qmat(s_out + ".U.qmat", r.U);
            io::write_qmat(s_out + ".V.qmat", r.V);
        }
    } catch (const InvalidArgument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const FormatError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

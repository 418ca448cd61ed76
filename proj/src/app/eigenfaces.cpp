#include "quat/eigenfaces.hpp"

#include "quat/decomp.hpp"
#include "quat/errors.hpp"
#include "quat/image.hpp"

#include <algorithm>
#include <filesystem>
#include <limits>
#include <map>
#include <random>

namespace quat {

QMatrix vec(const QMatrix& image) {
    const index_t m = image.rows(), n = image.cols();
    QMatrix v(m * n, 1);
    for (int part = 0; part < 4; ++part)
        for (index_t j = 0; j < n; ++j)
            for (index_t i = 0; i < m; ++i) v.at(part, j * m + i, 0) = image.at(part, i, j);
    return v;
}

EigenfaceModel eigenfaces_train(const FaceDataset& data, const RandConfig& cfg, FaceBasis basis) {
    const auto s = static_cast<index_t>(data.train.size());
    if (s < 2) throw InvalidArgument("eigenfaces_train: need at least two training images");
    EigenfaceModel model;
    model.rows = data.train.front().image.rows();
    model.cols = data.train.front().image.cols();
    const index_t mn = model.rows * model.cols;
    if (cfg.k > s) throw InvalidArgument("eigenfaces_train: k exceeds the number of training images");

    QMatrix X(mn, s);
    for (index_t c = 0; c < s; ++c) {
        const FaceImage& f = data.train[static_cast<std::size_t>(c)];
        if (f.image.rows() != model.rows || f.image.cols() != model.cols)
            throw DimensionMismatch("eigenfaces_train: training images differ in size");
        const QMatrix v = vec(f.image);
        for (int part = 0; part < 4; ++part)
            for (index_t r = 0; r < mn; ++r) X.at(part, r, c) = v.at(part, r, 0);
        model.labels.push_back(f.person);
    }

    model.mean = QMatrix(mn, 1);
    for (int part = 0; part < 4; ++part)
        for (index_t r = 0; r < mn; ++r) {
            double acc = 0.0;
            for (index_t c = 0; c < s; ++c) acc += X.at(part, r, c);
            model.mean.at(part, r, 0) = acc / static_cast<double>(s);
            for (index_t c = 0; c < s; ++c) X.at(part, r, c) -= model.mean.at(part, r, 0);
        }

    if (basis == FaceBasis::randomized) {
        model.basis = prandsvdQ(X, cfg).U;
    } else {
        model.basis = qsvd_truncate(X, cfg.k).U;
    }
    model.features = adjoint_mul(model.basis, X);
    return model;
}

QMatrix eigenfaces_project(const EigenfaceModel& model, const QMatrix& image) {
    if (image.rows() != model.rows || image.cols() != model.cols)
        throw DimensionMismatch("eigenfaces: image size differs from the training set");
    return adjoint_mul(model.basis, vec(image) - model.mean);
}

int eigenfaces_classify(const EigenfaceModel& model, const QMatrix& image) {
    const QMatrix f = eigenfaces_project(model, image);
    double best = std::numeric_limits<double>::infinity();
    int label = -1;
    for (index_t c = 0; c < model.features.cols(); ++c) {
        double d = 0.0;
        for (int part = 0; part < 4; ++part)
            for (index_t r = 0; r < f.rows(); ++r) {
                const double x = f.at(part, r, 0) - model.features.at(part, r, c);
                d += x * x;
            }
        if (d < best) {
            best = d;
            label = model.labels[static_cast<std::size_t>(c)];
        }
    }
    return label;
}

double eigenfaces_accuracy(const EigenfaceModel& model, const std::vector<FaceImage>& test) {
    if (test.empty()) throw InvalidArgument("eigenfaces_accuracy: empty test set");
    long hits = 0;
    for (const FaceImage& f : test) hits += eigenfaces_classify(model, f.image) == f.person;
    return static_cast<double>(hits) / static_cast<double>(test.size());
}

FaceDataset synthetic_faces(const SyntheticFaceOptions& opts) {
    if (opts.persons < 2 || opts.train_per_person < 1 || opts.test_per_person < 0 || opts.rows < 1 || opts.cols < 1)
        throw InvalidArgument("synthetic_faces: bad options");
    std::mt19937_64 rng(derive_seed(opts.seed, 0));
    std::normal_distribution<double> gauss;
    std::uniform_real_distribution<double> unit(64.0, 192.0);

    const index_t m = opts.rows, n = opts.cols;
    QMatrix base(m, n);
    for (int part = 1; part < 4; ++part)
        for (index_t i = 0; i < m; ++i)
            for (index_t j = 0; j < n; ++j) base.at(part, i, j) = unit(rng);

    std::vector<QMatrix> pattern;
    for (int p = 0; p < opts.persons; ++p) {
        QMatrix P(m, n);
        for (int part = 1; part < 4; ++part)
            for (index_t i = 0; i < m; ++i)
                for (index_t j = 0; j < n; ++j) P.at(part, i, j) = opts.pattern_scale * gauss(rng);
        pattern.push_back(std::move(P));
    }

    auto draw = [&](int person) {
        QMatrix img = base + pattern[static_cast<std::size_t>(person)];
        for (int part = 1; part < 4; ++part)
            for (index_t i = 0; i < m; ++i)
                for (index_t j = 0; j < n; ++j)
                    img.at(part, i, j) = std::clamp(img.at(part, i, j) + opts.noise * gauss(rng), 0.0, 255.0);
        return img;
    };

    FaceDataset data;
    for (int p = 0; p < opts.persons; ++p) {
        data.names.push_back("person" + std::to_string(p));
        for (int t = 0; t < opts.train_per_person; ++t) data.train.push_back({p, draw(p)});
        for (int t = 0; t < opts.test_per_person; ++t) data.test.push_back({p, draw(p)});
    }
    return data;
}

namespace {

std::vector<FaceImage> load_dir(const std::string& dir, std::map<std::string, int>& ids,
                                std::vector<std::string>& names) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(dir)) throw InvalidArgument("not a directory: " + dir);
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        const std::string ext = entry.path().extension().string();
        if (entry.is_regular_file() && (ext == ".png" || ext == ".ppm")) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());

    std::vector<FaceImage> out;
    for (const fs::path& f : files) {
        const std::string stem = f.stem().string();
        const std::size_t us = stem.rfind('_');
        if (us == std::string::npos || us == 0) throw FormatError("face file name must be <person>_<idx>: " + f.string());
        const std::string person = stem.substr(0, us);
        auto [it, fresh] = ids.try_emplace(person, static_cast<int>(names.size()));
        if (fresh) names.push_back(person);
        out.push_back({it->second, load_image(f.string())});
    }
    if (out.empty()) throw InvalidArgument("no face images in " + dir);
    return out;
}

} // namespace

FaceDataset load_face_dirs(const std::string& train_dir, const std::string& test_dir) {
    FaceDataset data;
    std::map<std::string, int> ids;
    data.train = load_dir(train_dir, ids, data.names);
    data.test = load_dir(test_dir, ids, data.names);
    if (data.names.size() < 2) throw InvalidArgument("face dataset needs at least two persons");
    return data;
}

} // namespace quat

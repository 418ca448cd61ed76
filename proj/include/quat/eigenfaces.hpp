#pragma once

#include "quat/qmatrix.hpp"
#include "quat/randomized.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace quat {

struct FaceImage {
    int person = 0;
    QMatrix image;
};

struct FaceDataset {
    std::vector<FaceImage> train;
    std::vector<FaceImage> test;
    std::vector<std::string> names;  // names[person], when loaded from disk
};

// Column-major vectorization: entry (i, j) lands at row j * rows + i.
QMatrix vec(const QMatrix& image);

enum class FaceBasis { randomized, exact };

struct EigenfaceModel {
    index_t rows = 0, cols = 0;
    QMatrix mean;      // mn x 1
    QMatrix basis;     // mn x k, orthonormal columns
    QMatrix features;  // k x s, one column per training image
    std::vector<int> labels;
};

// Dominant left singular vectors of the mean-centred stack X = [vec(F_i) - mean].
// The randomized basis comes from prandsvdQ; the exact one from qsvd_truncate.
EigenfaceModel eigenfaces_train(const FaceDataset& data, const RandConfig& cfg,
                                FaceBasis basis = FaceBasis::randomized);
QMatrix eigenfaces_project(const EigenfaceModel& model, const QMatrix& image);
// Label of the nearest training feature in 2-norm.
int eigenfaces_classify(const EigenfaceModel& model, const QMatrix& image);
double eigenfaces_accuracy(const EigenfaceModel& model, const std::vector<FaceImage>& test);

struct SyntheticFaceOptions {
    int persons = 10;
    int train_per_person = 5;
    int test_per_person = 3;
    index_t rows = 16, cols = 16;
    double pattern_scale = 30.0;  // per-person offset, per channel
    double noise = 8.0;           // per-image noise, per channel
    std::uint64_t seed = 0;
};

// Shared base face plus a fixed per-person pattern plus per-image noise,
// clamped to [0, 255].
FaceDataset synthetic_faces(const SyntheticFaceOptions& opts);

// Images named <person>_<idx>.png (or .ppm) in each directory. Person names
// are shared between the two directories.
FaceDataset load_face_dirs(const std::string& train_dir, const std::string& test_dir);

} // namespace quat

#pragma once

#include <cstdint>
#include <utility>

#include "gssvm/dataset.hpp"

namespace gssvm {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

struct Mat2 {
    double a11 = 1.0, a12 = 0.0;
    double a21 = 0.0, a22 = 1.0;
};

/// Two seeded 2-D Gaussian clusters, one per class.
struct ToyConfig {
    Vec2 mean_pos{0.2, 0.1};
    Mat2 cov_pos{0.5, 0.2, 0.2, 0.4};
    Vec2 mean_neg{1.7, 1.7};
    Mat2 cov_neg{0.4, -0.2, -0.2, 0.4};
    int n_train_per_class = 30;
    int n_test_per_class = 60;
    std::uint64_t seed = 0;
};

/// Lower-triangular L with L L^T = cov:
/// l11 = sqrt(c11), l21 = c12/l11, l22 = sqrt(c22 - l21^2).
/// Throws NotSPD when a square-root argument is <= 0 or cov is asymmetric.
Mat2 cholesky2(const Mat2& cov);

/// (train, test). Each point is mean + L z with z a Box-Muller normal pair
/// from one seeded stream; draw order is train before test, positives before
/// negatives, so identical configs give byte-identical datasets.
std::pair<Dataset, Dataset> gen_toy(const ToyConfig& cfg);

}  // namespace gssvm

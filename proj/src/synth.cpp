#include "gssvm/synth.hpp"

#include <cmath>

#include "gssvm/errors.hpp"
#include "gssvm/rng.hpp"

namespace gssvm {

Mat2 cholesky2(const Mat2& cov) {
    if (cov.a12 != cov.a21) throw DataError("NotSPD", "covariance is not symmetric");
    if (!(cov.a11 > 0.0)) throw DataError("NotSPD", "leading entry not positive");
    const double l11 = std::sqrt(cov.a11);
    const double l21 = cov.a12 / l11;
    const double rest = cov.a22 - l21 * l21;
    if (!(rest > 0.0)) throw DataError("NotSPD", "Schur complement not positive");
    return {l11, 0.0, l21, std::sqrt(rest)};
}

namespace {

SparseVector gaussian_point(Rng& rng, const Vec2& mean, const Mat2& chol) {
    const auto [z1, z2] = rng.normal_pair();
    const double x = mean.x + chol.a11 * z1;
    const double y = mean.y + chol.a21 * z1 + chol.a22 * z2;
    return {{1, x}, {2, y}};
}

void fill_class(Dataset& ds, Rng& rng, const Vec2& mean, const Mat2& chol, int count, int label) {
    for (int i = 0; i < count; ++i) {
        ds.points.push_back(gaussian_point(rng, mean, chol));
        ds.labels.push_back(label);
    }
}

}  // namespace

std::pair<Dataset, Dataset> gen_toy(const ToyConfig& cfg) {
    if (cfg.n_train_per_class < 1 || cfg.n_test_per_class < 1) {
        throw DataError("BadConfig", "per-class counts must be positive");
    }
    const Mat2 chol_pos = cholesky2(cfg.cov_pos);
    const Mat2 chol_neg = cholesky2(cfg.cov_neg);

    Rng rng(cfg.seed);
    Dataset train, test;
    train.name = "toy_train";
    test.name = "toy_test";
    train.n_features = 2;
    test.n_features = 2;

    fill_class(train, rng, cfg.mean_pos, chol_pos, cfg.n_train_per_class, +1);
    fill_class(train, rng, cfg.mean_neg, chol_neg, cfg.n_train_per_class, -1);
    fill_class(test, rng, cfg.mean_pos, chol_pos, cfg.n_test_per_class, +1);
    fill_class(test, rng, cfg.mean_neg, chol_neg, cfg.n_test_per_class, -1);
    return {std::move(train), std::move(test)};
}

}  // namespace gssvm

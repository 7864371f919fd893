#pragma once

#include <utility>
#include <vector>

#include "gssvm/solver.hpp"

namespace gssvm {

/// A trained model plus the boundary translation derived from the projected
/// spread of each class along the hyperplane normal.
struct GsModel {
    CsvmModel base;
    double d1 = 0.0;          // positive-class projected scale (range)
    double d2 = 0.0;          // negative-class projected scale (range)
    double delta = 0.0;       // boundary offset in functional-margin units
    double delta_scale = 1.0;
};

/// Projected coordinate of each point on the hyperplane normal:
/// e_i = sum_j alpha_j y_j K(sv_j, x_i) / ||w||. Throws DegenerateNormal when
/// ||w||^2 <= 1e-12.
std::vector<double> project_points(const CsvmModel& model, const Dataset& ds);

/// Per-class range (max - min) of the projections: (d1 positives, d2 negatives).
std::pair<double, double> projected_scales(const std::vector<double>& e,
                                           const std::vector<int>& labels);

/// delta_scale * (sqrt(d2) - sqrt(d1)) / (sqrt(d1) + sqrt(d2)); 0 when both
/// scales are zero. Negative values move the boundary toward the negative
/// class. |result| <= delta_scale.
double compute_delta(double d1, double d2, double delta_scale);

/// Projects the training set, measures class scales, and stores the boundary
/// offset. `ds` must be the model's training set.
GsModel apply_scaling(const CsvmModel& model, const Dataset& ds, double delta_scale = 1.0);

/// decision_value(base, x) - delta; the scaled boundary sits where this is 0.
double gs_decision_value(const GsModel& model, const SparseVector& x);

}  // namespace gssvm

#include "gssvm/scaling.hpp"

#include <cmath>
#include <limits>

#include "gssvm/errors.hpp"

namespace gssvm {

std::vector<double> project_points(const CsvmModel& model, const Dataset& ds) {
    const int nsv = model.sv_count();
    double w_norm_sq = 0.0;
    for (int i = 0; i < nsv; ++i) {
        const double ci = model.sv_alpha[i] * model.sv_labels[i];
        for (int j = 0; j < nsv; ++j) {
            const double cj = model.sv_alpha[j] * model.sv_labels[j];
            w_norm_sq += ci * cj * kernel_eval(model.kernel, model.sv_points[i], model.sv_points[j]);
        }
    }
    if (!(w_norm_sq > 1e-12)) {
        throw TrainError("DegenerateNormal", "||w||^2 <= 1e-12, no usable direction");
    }
    const double w_norm = std::sqrt(w_norm_sq);

    std::vector<double> e(static_cast<std::size_t>(ds.size()));
    for (int p = 0; p < ds.size(); ++p) {
        double sum = 0.0;
        for (int i = 0; i < nsv; ++i) {
            sum += model.sv_alpha[i] * model.sv_labels[i] *
                   kernel_eval(model.kernel, model.sv_points[i], ds.points[p]);
        }
        e[p] = sum / w_norm;
    }
    return e;
}

std::pair<double, double> projected_scales(const std::vector<double>& e,
                                           const std::vector<int>& labels) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    double pos_min = inf, pos_max = -inf, neg_min = inf, neg_max = -inf;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (labels[i] > 0) {
            pos_min = std::min(pos_min, e[i]);
            pos_max = std::max(pos_max, e[i]);
        } else {
            neg_min = std::min(neg_min, e[i]);
            neg_max = std::max(neg_max, e[i]);
        }
    }
    if (pos_max == -inf || neg_max == -inf) {
        throw TrainError("OneClassOnly", "projected scales need both classes");
    }
    return {pos_max - pos_min, neg_max - neg_min};
}

double compute_delta(double d1, double d2, double delta_scale) {
    const double s1 = std::sqrt(d1);
    const double s2 = std::sqrt(d2);
    if (s1 + s2 == 0.0) return 0.0;  // both classes degenerate: no shift
    return delta_scale * (s2 - s1) / (s1 + s2);
}

GsModel apply_scaling(const CsvmModel& model, const Dataset& ds, double delta_scale) {
    GsModel gs;
    gs.base = model;
    gs.delta_scale = delta_scale;
    const std::vector<double> e = project_points(model, ds);
    const auto [d1, d2] = projected_scales(e, ds.labels);
    gs.d1 = d1;
    gs.d2 = d2;
    gs.delta = compute_delta(d1, d2, delta_scale);
    return gs;
}

double gs_decision_value(const GsModel& model, const SparseVector& x) {
    return decision_value(model.base, x) - model.delta;
}

}  // namespace gssvm

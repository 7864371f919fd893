#include "gssvm/solver.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace gssvm {

namespace {

constexpr double kTau = 1e-12;  // floor for non-positive curvature

struct SmoState {
    std::vector<double> alpha;
    std::vector<double> grad;  // of 1/2 a'Qa - e'a  (minimization form)
};

CsvmModel build_model(const Dataset& ds, const KernelSpec& kernel, const SolverConfig& config,
                      const SmoState& s, double bias) {
    CsvmModel m;
    m.kernel = kernel;
    m.config = config;
    m.bias = bias;
    m.n_features = ds.n_features;
    double w = 0.0;
    for (int i = 0; i < ds.size(); ++i) {
        w += 0.5 * s.alpha[i] * (1.0 - s.grad[i]);
        if (s.alpha[i] > 0.0) {
            m.sv_points.push_back(ds.points[i]);
            m.sv_alpha.push_back(s.alpha[i]);
            m.sv_labels.push_back(ds.labels[i]);
        }
    }
    m.dual_objective = w;
    return m;
}

// b for free SVs is -y_i G_i; with none, the midpoint of the feasible
// interval left by the bound KKT inequalities.
double recover_bias(const Dataset& ds, const SmoState& s, double upper) {
    double sum_free = 0.0;
    int n_free = 0;
    double lb = -std::numeric_limits<double>::infinity();
    double ub = std::numeric_limits<double>::infinity();
    for (int i = 0; i < ds.size(); ++i) {
        const double v = -ds.labels[i] * s.grad[i];
        if (s.alpha[i] > 0.0 && s.alpha[i] < upper) {
            sum_free += v;
            ++n_free;
        } else if ((s.alpha[i] <= 0.0 && ds.labels[i] > 0) ||
                   (s.alpha[i] >= upper && ds.labels[i] < 0)) {
            lb = std::max(lb, v);
        } else {
            ub = std::min(ub, v);
        }
    }
    if (n_free > 0) return sum_free / n_free;
    return 0.5 * (lb + ub);
}

}  // namespace

const char* penalty_name(Penalty p) { return p == Penalty::l1 ? "l1" : "l2"; }

Penalty penalty_from_name(const std::string& name) {
    if (name == "l1") return Penalty::l1;
    if (name == "l2") return Penalty::l2;
    throw DataError("UnknownPenalty", "'" + name + "' is not l1|l2");
}

CsvmModel train_csvm(const Dataset& ds, const KernelSpec& kernel0, const SolverConfig& config) {
    if (config.C <= 0.0 || config.tol <= 0.0) {
        throw std::invalid_argument("C and tol must be positive");
    }
    const int l = ds.size();
    int n_pos = 0;
    for (int y : ds.labels) n_pos += (y > 0);
    if (n_pos == 0 || n_pos == l) {
        throw TrainError("OneClassOnly", "training data has a single class");
    }

    const KernelSpec kernel = resolve_gamma(kernel0, ds.n_features);
    const bool l1 = config.penalty == Penalty::l1;
    const double upper = l1 ? config.C : std::numeric_limits<double>::infinity();
    const double diag_add = l1 ? 0.0 : 1.0 / config.C;

    GramCache cache(kernel, ds);
    const auto& y = ds.labels;
    SmoState s;
    s.alpha.assign(l, 0.0);
    s.grad.assign(l, -1.0);

    for (std::uint64_t iter = 0;; ++iter) {
        // maximal violating pair: first index wins ties, so runs are
        // bit-identical
        int i = -1, j = -1;
        double m = -std::numeric_limits<double>::infinity();
        double M = std::numeric_limits<double>::infinity();
        for (int t = 0; t < l; ++t) {
            const double v = -y[t] * s.grad[t];
            const bool in_up = y[t] > 0 ? s.alpha[t] < upper : s.alpha[t] > 0.0;
            const bool in_low = y[t] > 0 ? s.alpha[t] > 0.0 : s.alpha[t] < upper;
            if (in_up && v > m) {
                m = v;
                i = t;
            }
            if (in_low && v < M) {
                M = v;
                j = t;
            }
        }
        if (m - M < config.tol) break;

        if (iter >= config.max_iter) {
            CsvmModel partial = build_model(ds, kernel, config, s, recover_bias(ds, s, upper));
            throw IterationLimitError(
                "no convergence after " + std::to_string(config.max_iter) + " pair updates",
                std::move(partial));
        }

        const std::span<const double> Ki = cache.row(i);
        const std::span<const double> Kj = cache.row(j);
        const double Kii = cache.diag(i) + diag_add;
        const double Kjj = cache.diag(j) + diag_add;
        const double Kij = Ki[j];
        const double old_ai = s.alpha[i];
        const double old_aj = s.alpha[j];

        // analytic two-variable step, then clip to the box; bound values are
        // assigned exactly so SV membership tests stay crisp
        if (y[i] != y[j]) {
            const double quad = std::max(Kii + Kjj + 2.0 * Kij, kTau);
            const double delta = (-s.grad[i] - s.grad[j]) / quad;
            const double diff = s.alpha[i] - s.alpha[j];
            s.alpha[i] += delta;
            s.alpha[j] += delta;
            if (diff > 0.0) {
                if (s.alpha[j] < 0.0) {
                    s.alpha[j] = 0.0;
                    s.alpha[i] = diff;
                }
            } else {
                if (s.alpha[i] < 0.0) {
                    s.alpha[i] = 0.0;
                    s.alpha[j] = -diff;
                }
            }
            if (diff > 0.0) {
                if (s.alpha[i] > upper) {
                    s.alpha[i] = upper;
                    s.alpha[j] = upper - diff;
                }
            } else {
                if (s.alpha[j] > upper) {
                    s.alpha[j] = upper;
                    s.alpha[i] = upper + diff;
                }
            }
        } else {
            const double quad = std::max(Kii + Kjj - 2.0 * Kij, kTau);
            const double delta = (s.grad[i] - s.grad[j]) / quad;
            const double sum = s.alpha[i] + s.alpha[j];
            s.alpha[i] -= delta;
            s.alpha[j] += delta;
            if (sum > upper) {
                if (s.alpha[i] > upper) {
                    s.alpha[i] = upper;
                    s.alpha[j] = sum - upper;
                }
            } else {
                if (s.alpha[j] < 0.0) {
                    s.alpha[j] = 0.0;
                    s.alpha[i] = sum;
                }
            }
            if (sum > upper) {
                if (s.alpha[j] > upper) {
                    s.alpha[j] = upper;
                    s.alpha[i] = sum - upper;
                }
            } else {
                if (s.alpha[i] < 0.0) {
                    s.alpha[i] = 0.0;
                    s.alpha[j] = sum;
                }
            }
        }

        const double dai = s.alpha[i] - old_ai;
        const double daj = s.alpha[j] - old_aj;
        for (int t = 0; t < l; ++t) {
            double qit = y[i] * y[t] * Ki[t];
            double qjt = y[j] * y[t] * Kj[t];
            if (t == i) qit += diag_add;
            if (t == j) qjt += diag_add;
            s.grad[t] += qit * dai + qjt * daj;
        }
    }

    return build_model(ds, kernel, config, s, recover_bias(ds, s, upper));
}

double dual_objective(const std::vector<double>& alpha, const Dataset& ds,
                      const KernelSpec& kernel0, const SolverConfig& config) {
    const std::size_t l = static_cast<std::size_t>(ds.size());
    if (alpha.size() != l) {
        throw TrainError("LengthMismatch", "alpha has " + std::to_string(alpha.size()) +
                                               " entries for " + std::to_string(l) + " points");
    }
    const KernelSpec kernel = resolve_gamma(kernel0, ds.n_features);
    const double diag_add = config.penalty == Penalty::l1 ? 0.0 : 1.0 / config.C;
    double linear = 0.0, quad = 0.0;
    for (std::size_t i = 0; i < l; ++i) {
        linear += alpha[i];
        for (std::size_t j = 0; j < l; ++j) {
            double k = kernel_eval(kernel, ds.points[i], ds.points[j]);
            if (i == j) k += diag_add;
            quad += alpha[i] * alpha[j] * ds.labels[i] * ds.labels[j] * k;
        }
    }
    return linear - 0.5 * quad;
}

double decision_value(const CsvmModel& model, const SparseVector& x) {
    double f = model.bias;
    for (int i = 0; i < model.sv_count(); ++i) {
        f += model.sv_alpha[i] * model.sv_labels[i] * kernel_eval(model.kernel, model.sv_points[i], x);
    }
    return f;
}

std::vector<double> linear_weights(const CsvmModel& model) {
    if (model.kernel.family != KernelFamily::linear) {
        throw std::invalid_argument("explicit weights require the linear kernel");
    }
    std::vector<double> w(static_cast<std::size_t>(model.n_features), 0.0);
    for (int i = 0; i < model.sv_count(); ++i) {
        const double coef = model.sv_alpha[i] * model.sv_labels[i];
        for (const Feature& f : model.sv_points[i]) {
            if (f.index > static_cast<int>(w.size())) w.resize(f.index, 0.0);
            w[f.index - 1] += coef * f.value;
        }
    }
    return w;
}

}  // namespace gssvm

#pragma once

#include <cstdint>
#include <vector>

#include "gssvm/dataset.hpp"
#include "gssvm/errors.hpp"
#include "gssvm/kernel.hpp"

namespace gssvm {

/// l1: hinge loss, box constraint 0 <= alpha <= C (the LIBSVM C-SVC form).
/// l2: squared slacks, alpha >= 0 with 1/C added to the kernel diagonal.
enum class Penalty { l1, l2 };

const char* penalty_name(Penalty p);
Penalty penalty_from_name(const std::string& name);

struct SolverConfig {
    double C = 1.0;
    Penalty penalty = Penalty::l1;
    double tol = 1e-3;
    std::uint64_t max_iter = 10'000'000;
};

struct CsvmModel {
    std::vector<SparseVector> sv_points;
    std::vector<double> sv_alpha;  // > 0
    std::vector<int> sv_labels;    // +1 / -1
    double bias = 0.0;
    KernelSpec kernel;  // gamma resolved
    SolverConfig config;
    double dual_objective = 0.0;
    int n_features = 0;

    int sv_count() const { return static_cast<int>(sv_points.size()); }
};

/// Thrown when the pair-update budget runs out; carries the best iterate so
/// far for diagnostics.
class IterationLimitError : public TrainError {
public:
    IterationLimitError(const std::string& what, CsvmModel partial)
        : TrainError("IterationLimit", what), partial_(std::move(partial)) {}

    const CsvmModel& partial() const noexcept { return partial_; }

private:
    CsvmModel partial_;
};

/// Solves the soft-margin dual by SMO with maximal-violating-pair selection.
/// Terminates when the worst KKT pair violation drops below config.tol.
/// Deterministic: identical inputs give bit-identical models.
CsvmModel train_csvm(const Dataset& ds, const KernelSpec& kernel, const SolverConfig& config);

/// W(alpha) = sum alpha_i - 1/2 sum_ij alpha_i alpha_j y_i y_j Ktilde(i,j),
/// where l2 mode adds 1/C to the kernel diagonal. Pure; used by oracle tests.
double dual_objective(const std::vector<double>& alpha, const Dataset& ds,
                      const KernelSpec& kernel, const SolverConfig& config);

/// Unshifted functional value  sum_i alpha_i y_i K(sv_i, x) + b.
double decision_value(const CsvmModel& model, const SparseVector& x);

/// Dense weight vector accumulated from the SV expansion (linear kernel only).
std::vector<double> linear_weights(const CsvmModel& model);

}  // namespace gssvm

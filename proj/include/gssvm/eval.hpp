#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gssvm/dataset.hpp"
#include "gssvm/scaling.hpp"
#include "gssvm/solver.hpp"

namespace gssvm {

/// Hyperparameter lattice. Defaults are the conventional powers of two:
/// C in 2^-5..2^15 (odd exponents), gamma in 2^-15..2^3 (rbf only).
struct GridSpec {
    std::vector<double> c_values;
    std::vector<double> gamma_values;

    static GridSpec defaults();
};

struct CvResult {
    double accuracy = 0.0;      // percent, pooled over folds
    int degenerate_folds = 0;   // folds where scaling fell back to C-SVM
};

/// k-fold accuracy with identical folds for scaled and unscaled runs of the
/// same (ds, k, seed). A fold whose scaling degenerates falls back to the
/// plain model and is counted in the result.
CvResult cross_validate(const Dataset& ds, const KernelSpec& kernel, const SolverConfig& config,
                        int k, std::uint64_t seed, bool use_gs, double delta_scale = 1.0,
                        int jobs = 1);

struct GridResult {
    KernelSpec kernel;
    SolverConfig config;
    double accuracy = 0.0;
    int degenerate_folds = 0;
};

/// Exhaustive search over the grid (C only, plus gamma for rbf). Accuracy
/// ties break to the smallest C, then the smallest gamma.
GridResult grid_search(const Dataset& ds, KernelFamily family, const GridSpec& grid,
                       const SolverConfig& base, int k, std::uint64_t seed, bool use_gs,
                       double delta_scale = 1.0, int jobs = 1);

struct ReportRow {
    std::string dataset;
    std::string kernel;
    double csvm_accuracy = 0.0;
    double gssvm_accuracy = 0.0;
    double csvm_c = 0.0;
    double gssvm_c = 0.0;
    double csvm_gamma = 0.0;
    double gssvm_gamma = 0.0;
    int folds = 0;
    std::uint64_t seed = 0;
    std::string note;  // degenerate-fold flags or per-row error name

    bool operator==(const ReportRow&) const = default;
};

struct EvalReport {
    std::vector<ReportRow> rows;
    GridSpec grid;
    SolverConfig base;
    double delta_scale = 1.0;
    int folds = 0;
    std::uint64_t seed = 0;
};

/// One row per (dataset, kernel); both methods tuned independently on
/// identical folds and grids. Row failures are recorded in-row and never
/// abort the remaining rows.
EvalReport compare(const std::vector<Dataset>& datasets, const std::vector<KernelFamily>& kernels,
                   const GridSpec& grid, const SolverConfig& base, int k, std::uint64_t seed,
                   double delta_scale = 1.0, int jobs = 1);

std::string render_table(const EvalReport& report);
std::string report_csv(const EvalReport& report);
std::vector<ReportRow> parse_report_csv(const std::string& text);

struct SweepPoint {
    double c = 0.0;
    double csvm_accuracy = 0.0;
    double gssvm_accuracy = 0.0;
};

/// Accuracy of both methods per C on fixed folds.
std::vector<SweepPoint> c_sweep(const Dataset& ds, const KernelSpec& kernel,
                                const SolverConfig& base, const std::vector<double>& c_values,
                                int k, std::uint64_t seed, double delta_scale = 1.0, int jobs = 1);

std::string sweep_csv(const std::vector<SweepPoint>& curve, const SolverConfig& base,
                      int folds, std::uint64_t seed);

/// Minimal two-series line chart.
std::string sweep_svg(const std::vector<SweepPoint>& curve);

}  // namespace gssvm

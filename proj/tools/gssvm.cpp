#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gssvm/eval.hpp"
#include "gssvm/model.hpp"
#include "gssvm/synth.hpp"
#include "gssvm/text.hpp"
#include "gssvm/version.hpp"

namespace {

using namespace gssvm;

struct KernelFlags {
    std::string family = "linear";
    double gamma = 0.0;  // 0 = 1/n_features
    int degree = 3;
    double coef0 = 0.0;

    KernelSpec spec() const {
        KernelSpec s;
        s.family = family_from_name(family);
        s.gamma = gamma;
        s.degree = degree;
        s.coef0 = coef0;
        return s;
    }
};

struct SolverFlags {
    double c = 1.0;
    std::string penalty = "l1";
    double tol = 1e-3;
    std::uint64_t max_iter = 10'000'000;

    SolverConfig config() const {
        SolverConfig cfg;
        cfg.C = c;
        cfg.penalty = penalty_from_name(penalty);
        cfg.tol = tol;
        cfg.max_iter = max_iter;
        return cfg;
    }
};

void add_kernel_flags(CLI::App& cmd, KernelFlags& k) {
    cmd.add_option("--kernel", k.family, "Kernel family: linear|rbf|poly")
        ->check(CLI::IsMember({"linear", "rbf", "poly"}));
    cmd.add_option("--gamma", k.gamma, "Kernel gamma; 0 means 1/n_features");
    cmd.add_option("--degree", k.degree, "Polynomial degree")->check(CLI::PositiveNumber);
    cmd.add_option("--coef0", k.coef0, "Polynomial coef0");
}

void add_solver_flags(CLI::App& cmd, SolverFlags& s) {
    cmd.add_option("--c", s.c, "Penalty coefficient C")->check(CLI::PositiveNumber);
    cmd.add_option("--penalty", s.penalty, "Slack penalty: l1 (hinge) or l2 (squared)")
        ->check(CLI::IsMember({"l1", "l2"}));
    cmd.add_option("--tol", s.tol, "KKT violation tolerance")->check(CLI::PositiveNumber);
    cmd.add_option("--max-iter", s.max_iter, "Pair-update budget");
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw DataError("IoFailure", "cannot open '" + path + "' for writing");
    out << content;
    if (!out) throw DataError("IoFailure", "short write to '" + path + "'");
}

int run(int argc, char** argv) {
    CLI::App app{"Kernel SVM trainer with scaled boundary translation"};
    app.require_subcommand(1);
    app.set_version_flag("--version",
                         std::string("gssvm ") + kVersion + " (model format " +
                             std::to_string(kModelFormatVersion) + ")");
    app.option_defaults()->always_capture_default();

    // train
    auto* train = app.add_subcommand("train", "Train a model and write it to a file");
    std::string train_input, train_output;
    KernelFlags train_kernel;
    SolverFlags train_solver;
    bool train_gs = false;
    double train_delta_scale = 1.0;
    train->add_option("-i,--input", train_input, "Training data (svmlight)")->required();
    train->add_option("-o,--output", train_output, "Model file to write")->required();
    add_kernel_flags(*train, train_kernel);
    add_solver_flags(*train, train_solver);
    train->add_flag("--gs", train_gs, "Translate the boundary by the projected-scale offset");
    train->add_option("--delta-scale", train_delta_scale, "Multiplier on the boundary offset")
        ->check(CLI::PositiveNumber);

    // predict
    auto* predict_cmd = app.add_subcommand("predict", "Write one predicted label per input line");
    std::string predict_model, predict_input;
    predict_cmd->add_option("-m,--model", predict_model, "Model file")->required();
    predict_cmd->add_option("-i,--input", predict_input, "Data (svmlight)")->required();

    // evaluate
    auto* evaluate = app.add_subcommand("evaluate", "Cross-validated accuracy on one dataset");
    std::string eval_input;
    KernelFlags eval_kernel;
    SolverFlags eval_solver;
    bool eval_gs = false;
    double eval_delta_scale = 1.0;
    int eval_folds = 10;
    std::uint64_t eval_seed = 42;
    int eval_jobs = 1;
    std::vector<double> eval_grid_c, eval_grid_gamma;
    evaluate->add_option("-i,--input", eval_input, "Data (svmlight)")->required();
    add_kernel_flags(*evaluate, eval_kernel);
    add_solver_flags(*evaluate, eval_solver);
    evaluate->add_flag("--gs", eval_gs, "Evaluate the scaled-boundary variant");
    evaluate->add_option("--delta-scale", eval_delta_scale, "Multiplier on the boundary offset")
        ->check(CLI::PositiveNumber);
    evaluate->add_option("--folds", eval_folds, "Fold count")->check(CLI::Range(2, 1 << 20));
    evaluate->add_option("--seed", eval_seed, "Fold shuffle seed");
    evaluate->add_option("--jobs", eval_jobs, "Concurrent tasks")->check(CLI::PositiveNumber);
    evaluate->add_option("--grid-c", eval_grid_c, "C grid; picks the best by CV")->delimiter(',');
    evaluate->add_option("--grid-gamma", eval_grid_gamma, "gamma grid (rbf)")->delimiter(',');

    // compare
    auto* compare_cmd = app.add_subcommand("compare", "Tabulate both methods over datasets x kernels");
    std::vector<std::string> compare_data;
    std::vector<std::string> compare_kernels{"linear", "rbf"};
    SolverFlags compare_solver;
    double compare_delta_scale = 1.0;
    int compare_folds = 10;
    std::uint64_t compare_seed = 42;
    int compare_jobs = 1;
    std::vector<double> compare_grid_c, compare_grid_gamma;
    std::string compare_csv;
    compare_cmd->add_option("--data", compare_data, "svmlight files")->required()->delimiter(',');
    compare_cmd->add_option("--kernels", compare_kernels, "Kernel families")->delimiter(',');
    add_solver_flags(*compare_cmd, compare_solver);
    compare_cmd->add_option("--delta-scale", compare_delta_scale, "Multiplier on the boundary offset")
        ->check(CLI::PositiveNumber);
    compare_cmd->add_option("--folds", compare_folds, "Fold count")->check(CLI::Range(2, 1 << 20));
    compare_cmd->add_option("--seed", compare_seed, "Fold shuffle seed");
    compare_cmd->add_option("--jobs", compare_jobs, "Concurrent tasks")->check(CLI::PositiveNumber);
    compare_cmd->add_option("--grid-c", compare_grid_c, "C grid")->delimiter(',');
    compare_cmd->add_option("--grid-gamma", compare_grid_gamma, "gamma grid (rbf)")->delimiter(',');
    compare_cmd->add_option("--csv", compare_csv, "Also write the report as CSV");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "Accuracy of both methods across C values");
    std::string sweep_input, sweep_csv_path, sweep_svg_path;
    KernelFlags sweep_kernel;
    SolverFlags sweep_solver;
    double sweep_delta_scale = 1.0;
    int sweep_folds = 10;
    std::uint64_t sweep_seed = 42;
    int sweep_jobs = 1;
    std::vector<double> sweep_c_values;
    sweep->add_option("-i,--input", sweep_input, "Data (svmlight)")->required();
    add_kernel_flags(*sweep, sweep_kernel);
    add_solver_flags(*sweep, sweep_solver);
    sweep->add_option("--delta-scale", sweep_delta_scale, "Multiplier on the boundary offset")
        ->check(CLI::PositiveNumber);
    sweep->add_option("--c-values", sweep_c_values, "C values (default: the standard grid)")
        ->delimiter(',');
    sweep->add_option("--folds", sweep_folds, "Fold count")->check(CLI::Range(2, 1 << 20));
    sweep->add_option("--seed", sweep_seed, "Fold shuffle seed");
    sweep->add_option("--jobs", sweep_jobs, "Concurrent tasks")->check(CLI::PositiveNumber);
    sweep->add_option("--csv", sweep_csv_path, "Write the curve as CSV");
    sweep->add_option("--svg", sweep_svg_path, "Write a line chart");

    // gen-toy
    auto* gen = app.add_subcommand("gen-toy", "Sample the 2-D two-Gaussian toy data");
    std::string gen_train_out, gen_test_out;
    std::uint64_t gen_seed = 0;
    std::vector<double> gen_mean_pos{0.2, 0.1}, gen_cov_pos{0.5, 0.2, 0.4};
    std::vector<double> gen_mean_neg{1.7, 1.7}, gen_cov_neg{0.4, -0.2, 0.4};
    int gen_n_train = 30, gen_n_test = 60;
    gen->add_option("-o,--output", gen_train_out, "Training set file")->required();
    gen->add_option("--test-out", gen_test_out, "Test set file");
    gen->add_option("--seed", gen_seed, "Sampling seed");
    gen->add_option("--mean-pos", gen_mean_pos, "Positive mean: x,y")->delimiter(',')->expected(2);
    gen->add_option("--cov-pos", gen_cov_pos, "Positive covariance: c11,c12,c22")->delimiter(',')->expected(3);
    gen->add_option("--mean-neg", gen_mean_neg, "Negative mean: x,y")->delimiter(',')->expected(2);
    gen->add_option("--cov-neg", gen_cov_neg, "Negative covariance: c11,c12,c22")->delimiter(',')->expected(3);
    gen->add_option("--n-train", gen_n_train, "Training points per class")->check(CLI::PositiveNumber);
    gen->add_option("--n-test", gen_n_test, "Test points per class")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n\n" << app.help() << std::flush;
        return 1;
    }

    if (*train) {
        const Dataset ds = load_svmlight_file(train_input);
        const CsvmModel model = train_csvm(ds, train_kernel.spec(), train_solver.config());
        std::cerr << "trained " << model.sv_count() << " SVs, bias "
                  << format_double(model.bias) << ", dual objective "
                  << format_double(model.dual_objective) << "\n";
        if (train_gs) {
            try {
                const GsModel gs = apply_scaling(model, ds, train_delta_scale);
                std::cerr << "boundary offset delta " << format_double(gs.delta) << " (d1 "
                          << format_double(gs.d1) << ", d2 " << format_double(gs.d2) << ")\n";
                save_model(gs, train_output);
                return 0;
            } catch (const TrainError& e) {
                std::cerr << "warning: " << e.what() << "; saving the unshifted model\n";
            }
        }
        save_model(model, train_output);
        return 0;
    }

    if (*predict_cmd) {
        const LoadedModel model = load_model(predict_model);
        const Dataset ds = load_svmlight_file(predict_input);
        int correct = 0;
        std::string out;
        for (int i = 0; i < ds.size(); ++i) {
            const int label = model.predict_point(ds.points[i]);
            out += label > 0 ? "+1\n" : "-1\n";
            correct += (label == ds.labels[i]);
        }
        std::cout << out << std::flush;
        std::cerr << "accuracy " << format_double(100.0 * correct / ds.size()) << "% (" << correct
                  << "/" << ds.size() << ")\n";
        return 0;
    }

    if (*evaluate) {
        const Dataset ds = load_svmlight_file(eval_input);
        const SolverConfig base = eval_solver.config();
        std::cout << "# gssvm " << kVersion << " evaluate, " << eval_folds << "-fold CV, seed "
                  << eval_seed << "\n";
        std::cout << "# dataset " << ds.name << ", method " << (eval_gs ? "gssvm" : "csvm")
                  << ", penalty " << eval_solver.penalty << ", tol " << format_double(base.tol)
                  << ", delta_scale " << format_double(eval_delta_scale) << "\n";
        if (!eval_grid_c.empty() || !eval_grid_gamma.empty()) {
            GridSpec grid = GridSpec::defaults();
            if (!eval_grid_c.empty()) grid.c_values = eval_grid_c;
            if (!eval_grid_gamma.empty()) grid.gamma_values = eval_grid_gamma;
            const GridResult best =
                grid_search(ds, family_from_name(eval_kernel.family), grid, base, eval_folds,
                            eval_seed, eval_gs, eval_delta_scale, eval_jobs);
            std::cout << "accuracy " << format_double(best.accuracy) << "\n";
            std::cout << "best_c " << format_double(best.config.C) << "\n";
            std::cout << "best_gamma " << format_double(best.kernel.gamma) << "\n";
            std::cout << "degenerate_folds " << best.degenerate_folds << "\n";
        } else {
            const CvResult cv = cross_validate(ds, eval_kernel.spec(), base, eval_folds, eval_seed,
                                               eval_gs, eval_delta_scale, eval_jobs);
            std::cout << "accuracy " << format_double(cv.accuracy) << "\n";
            std::cout << "degenerate_folds " << cv.degenerate_folds << "\n";
        }
        return 0;
    }

    if (*compare_cmd) {
        std::vector<Dataset> datasets;
        datasets.reserve(compare_data.size());
        for (const std::string& path : compare_data) datasets.push_back(load_svmlight_file(path));
        std::vector<KernelFamily> families;
        families.reserve(compare_kernels.size());
        for (const std::string& name : compare_kernels) families.push_back(family_from_name(name));
        GridSpec grid = GridSpec::defaults();
        if (!compare_grid_c.empty()) grid.c_values = compare_grid_c;
        if (!compare_grid_gamma.empty()) grid.gamma_values = compare_grid_gamma;
        const EvalReport report =
            compare(datasets, families, grid, compare_solver.config(), compare_folds, compare_seed,
                    compare_delta_scale, compare_jobs);
        std::cout << render_table(report) << std::flush;
        if (!compare_csv.empty()) write_text_file(compare_csv, report_csv(report));
        return 0;
    }

    if (*sweep) {
        const Dataset ds = load_svmlight_file(sweep_input);
        if (sweep_c_values.empty()) sweep_c_values = GridSpec::defaults().c_values;
        const std::vector<SweepPoint> curve =
            c_sweep(ds, sweep_kernel.spec(), sweep_solver.config(), sweep_c_values, sweep_folds,
                    sweep_seed, sweep_delta_scale, sweep_jobs);
        const std::string csv = sweep_csv(curve, sweep_solver.config(), sweep_folds, sweep_seed);
        std::cout << csv << std::flush;
        if (!sweep_csv_path.empty()) write_text_file(sweep_csv_path, csv);
        if (!sweep_svg_path.empty()) write_text_file(sweep_svg_path, sweep_svg(curve));
        return 0;
    }

    if (*gen) {
        ToyConfig cfg;
        cfg.mean_pos = {gen_mean_pos[0], gen_mean_pos[1]};
        cfg.cov_pos = {gen_cov_pos[0], gen_cov_pos[1], gen_cov_pos[1], gen_cov_pos[2]};
        cfg.mean_neg = {gen_mean_neg[0], gen_mean_neg[1]};
        cfg.cov_neg = {gen_cov_neg[0], gen_cov_neg[1], gen_cov_neg[1], gen_cov_neg[2]};
        cfg.n_train_per_class = gen_n_train;
        cfg.n_test_per_class = gen_n_test;
        cfg.seed = gen_seed;
        const auto [train_ds, test_ds] = gen_toy(cfg);

        auto header = [&](const char* split) {
            std::string h = "toy 2-gaussian sample, split ";
            h += split;
            h += "\nseed " + std::to_string(cfg.seed);
            h += "\nmean_pos " + format_double(cfg.mean_pos.x) + " " + format_double(cfg.mean_pos.y);
            h += "\ncov_pos " + format_double(cfg.cov_pos.a11) + " " + format_double(cfg.cov_pos.a12) +
                 " " + format_double(cfg.cov_pos.a22);
            h += "\nmean_neg " + format_double(cfg.mean_neg.x) + " " + format_double(cfg.mean_neg.y);
            h += "\ncov_neg " + format_double(cfg.cov_neg.a11) + " " + format_double(cfg.cov_neg.a12) +
                 " " + format_double(cfg.cov_neg.a22);
            h += "\nn_train_per_class " + std::to_string(cfg.n_train_per_class);
            h += "\nn_test_per_class " + std::to_string(cfg.n_test_per_class);
            return h;
        };
        save_svmlight_file(train_ds, gen_train_out, header("train"));
        if (!gen_test_out.empty()) save_svmlight_file(test_ds, gen_test_out, header("test"));
        return 0;
    }

    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const gssvm::DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const gssvm::TrainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}

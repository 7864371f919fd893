#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "gssvm/eval.hpp"
#include "gssvm/model.hpp"
#include "gssvm/synth.hpp"
#include "gssvm/version.hpp"

namespace py = pybind11;
using namespace gssvm;

namespace {

using PyPoint = std::vector<std::pair<int, double>>;

SparseVector to_point(const PyPoint& pairs) {
    SparseVector point;
    point.reserve(pairs.size());
    int prev = 0;
    for (const auto& [index, value] : pairs) {
        if (index <= prev) throw DataError("NonIncreasingIndex", "feature indices must be strictly increasing and >= 1");
        prev = index;
        point.push_back({index, value});
    }
    return point;
}

PyPoint from_point(const SparseVector& point) {
    PyPoint pairs;
    pairs.reserve(point.size());
    for (const Feature& f : point) pairs.emplace_back(f.index, f.value);
    return pairs;
}

Dataset make_dataset(const std::vector<PyPoint>& points, const std::vector<int>& labels,
                     const std::string& name) {
    if (points.size() != labels.size() || points.empty()) {
        throw DataError("EmptyDataset", "points and labels must be equally sized and nonempty");
    }
    Dataset ds;
    ds.name = name;
    for (const PyPoint& p : points) {
        ds.points.push_back(to_point(p));
        if (!ds.points.back().empty()) ds.n_features = std::max(ds.n_features, ds.points.back().back().index);
    }
    for (int y : labels) {
        if (y == 0) throw DataError("ZeroLabel", "label 0 has no class");
        ds.labels.push_back(y > 0 ? +1 : -1);
    }
    return ds;
}

KernelSpec make_kernel(const std::string& family, double gamma, int degree, double coef0) {
    KernelSpec spec;
    spec.family = family_from_name(family);
    spec.gamma = gamma;
    spec.degree = degree;
    spec.coef0 = coef0;
    return spec;
}

SolverConfig make_config(double c, const std::string& penalty, double tol, std::uint64_t max_iter) {
    SolverConfig cfg;
    cfg.C = c;
    cfg.penalty = penalty_from_name(penalty);
    cfg.tol = tol;
    cfg.max_iter = max_iter;
    return cfg;
}

ToyConfig make_toy_config(std::pair<double, double> mean_pos, std::vector<double> cov_pos,
                          std::pair<double, double> mean_neg, std::vector<double> cov_neg,
                          int n_train_per_class, int n_test_per_class, std::uint64_t seed) {
    if (cov_pos.size() != 3 || cov_neg.size() != 3) {
        throw DataError("BadConfig", "covariances are (c11, c12, c22) triples");
    }
    ToyConfig cfg;
    cfg.mean_pos = {mean_pos.first, mean_pos.second};
    cfg.cov_pos = {cov_pos[0], cov_pos[1], cov_pos[1], cov_pos[2]};
    cfg.mean_neg = {mean_neg.first, mean_neg.second};
    cfg.cov_neg = {cov_neg[0], cov_neg[1], cov_neg[1], cov_neg[2]};
    cfg.n_train_per_class = n_train_per_class;
    cfg.n_test_per_class = n_test_per_class;
    cfg.seed = seed;
    return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Kernel SVM training with scaled boundary translation";
    m.attr("__version__") = kVersion;
    m.attr("MODEL_FORMAT_VERSION") = kModelFormatVersion;

    py::register_exception<Error>(m, "Error", PyExc_RuntimeError);

    py::class_<Dataset>(m, "Dataset")
        .def(py::init(&make_dataset), py::arg("points"), py::arg("labels"), py::arg("name") = "")
        .def_property_readonly("points",
                               [](const Dataset& ds) {
                                   std::vector<PyPoint> out;
                                   out.reserve(ds.points.size());
                                   for (const SparseVector& p : ds.points) out.push_back(from_point(p));
                                   return out;
                               })
        .def_readonly("labels", &Dataset::labels)
        .def_readonly("n_features", &Dataset::n_features)
        .def_readonly("name", &Dataset::name)
        .def("__len__", &Dataset::size)
        .def("__repr__", [](const Dataset& ds) {
            std::ostringstream ss;
            ss << "Dataset(name='" << ds.name << "', l=" << ds.size() << ", n_features="
               << ds.n_features << ")";
            return ss.str();
        });

    m.def("parse_svmlight",
          [](const std::string& text, const std::string& name) { return parse_svmlight(text, name); },
          py::arg("text"), py::arg("name") = "");
    m.def("load_svmlight_file", &load_svmlight_file, py::arg("path"));
    m.def("serialize_svmlight", &serialize_svmlight, py::arg("dataset"));
    m.def("save_svmlight_file", &save_svmlight_file, py::arg("dataset"), py::arg("path"),
          py::arg("header_comment") = "");
    m.def(
        "stratified_kfold",
        [](const Dataset& ds, int k, std::uint64_t seed) {
            const SplitPlan plan = stratified_kfold(ds, k, seed);
            std::vector<std::pair<std::vector<int>, std::vector<int>>> folds;
            folds.reserve(plan.folds.size());
            for (const Fold& f : plan.folds) folds.emplace_back(f.train, f.test);
            return folds;
        },
        py::arg("dataset"), py::arg("k"), py::arg("seed"));

    py::class_<KernelSpec>(m, "KernelSpec")
        .def(py::init(&make_kernel), py::arg("family") = "linear", py::arg("gamma") = 0.0,
             py::arg("degree") = 3, py::arg("coef0") = 0.0)
        .def_property_readonly("family", [](const KernelSpec& s) { return std::string(family_name(s.family)); })
        .def_readonly("gamma", &KernelSpec::gamma)
        .def_readonly("degree", &KernelSpec::degree)
        .def_readonly("coef0", &KernelSpec::coef0);

    m.def("kernel_eval",
          [](const KernelSpec& spec, const PyPoint& a, const PyPoint& b) {
              return kernel_eval(spec, to_point(a), to_point(b));
          },
          py::arg("spec"), py::arg("a"), py::arg("b"));
    m.def("gram", &gram, py::arg("spec"), py::arg("dataset"));

    py::class_<SolverConfig>(m, "SolverConfig")
        .def(py::init(&make_config), py::arg("c") = 1.0, py::arg("penalty") = "l1",
             py::arg("tol") = 1e-3, py::arg("max_iter") = 10'000'000ULL)
        .def_readonly("c", &SolverConfig::C)
        .def_property_readonly("penalty", [](const SolverConfig& c) { return std::string(penalty_name(c.penalty)); })
        .def_readonly("tol", &SolverConfig::tol)
        .def_readonly("max_iter", &SolverConfig::max_iter);

    py::class_<CsvmModel>(m, "CsvmModel")
        .def_readonly("bias", &CsvmModel::bias)
        .def_readonly("sv_alpha", &CsvmModel::sv_alpha)
        .def_readonly("sv_labels", &CsvmModel::sv_labels)
        .def_readonly("dual_objective", &CsvmModel::dual_objective)
        .def_readonly("n_features", &CsvmModel::n_features)
        .def_readonly("kernel", &CsvmModel::kernel)
        .def_property_readonly("sv_count", &CsvmModel::sv_count)
        .def("decision_value",
             [](const CsvmModel& m_, const PyPoint& x) { return decision_value(m_, to_point(x)); })
        .def("predict", [](const CsvmModel& m_, const PyPoint& x) {
            return predict(m_, to_point(x));
        });

    py::class_<GsModel>(m, "GsModel")
        .def_readonly("base", &GsModel::base)
        .def_readonly("d1", &GsModel::d1)
        .def_readonly("d2", &GsModel::d2)
        .def_readonly("delta", &GsModel::delta)
        .def_readonly("delta_scale", &GsModel::delta_scale)
        .def("decision_value",
             [](const GsModel& m_, const PyPoint& x) { return gs_decision_value(m_, to_point(x)); })
        .def("predict", [](const GsModel& m_, const PyPoint& x) {
            return predict(m_, to_point(x));
        });

    m.def("train_csvm", &train_csvm, py::arg("dataset"), py::arg("kernel") = KernelSpec{},
          py::arg("config") = SolverConfig{});
    m.def("dual_objective", &dual_objective, py::arg("alpha"), py::arg("dataset"),
          py::arg("kernel"), py::arg("config"));
    m.def("apply_scaling", &apply_scaling, py::arg("model"), py::arg("dataset"),
          py::arg("delta_scale") = 1.0);
    m.def("project_points", &project_points, py::arg("model"), py::arg("dataset"));
    m.def("projected_scales", &projected_scales, py::arg("projections"), py::arg("labels"));
    m.def("compute_delta", &compute_delta, py::arg("d1"), py::arg("d2"),
          py::arg("delta_scale") = 1.0);

    m.def("save_model", py::overload_cast<const CsvmModel&, const std::string&>(&save_model),
          py::arg("model"), py::arg("path"));
    m.def("save_model", py::overload_cast<const GsModel&, const std::string&>(&save_model),
          py::arg("model"), py::arg("path"));

    py::class_<LoadedModel>(m, "LoadedModel")
        .def_property_readonly("kind",
                               [](const LoadedModel& lm) {
                                   return std::string(lm.kind == ModelKind::csvm ? "csvm" : "gssvm");
                               })
        .def_readonly("model", &LoadedModel::model)
        .def("decision_value", [](const LoadedModel& lm, const PyPoint& x) { return lm.decision(to_point(x)); })
        .def("predict", [](const LoadedModel& lm, const PyPoint& x) { return lm.predict_point(to_point(x)); });

    m.def("load_model", &load_model, py::arg("path"));

    m.def("gen_toy",
          [](std::pair<double, double> mean_pos, std::vector<double> cov_pos,
             std::pair<double, double> mean_neg, std::vector<double> cov_neg, int n_train_per_class,
             int n_test_per_class, std::uint64_t seed) {
              return gen_toy(make_toy_config(mean_pos, std::move(cov_pos), mean_neg,
                                             std::move(cov_neg), n_train_per_class,
                                             n_test_per_class, seed));
          },
          py::arg("mean_pos") = std::pair<double, double>{0.2, 0.1},
          py::arg("cov_pos") = std::vector<double>{0.5, 0.2, 0.4},
          py::arg("mean_neg") = std::pair<double, double>{1.7, 1.7},
          py::arg("cov_neg") = std::vector<double>{0.4, -0.2, 0.4},
          py::arg("n_train_per_class") = 30, py::arg("n_test_per_class") = 60, py::arg("seed") = 0);

    m.def(
        "cross_validate",
        [](const Dataset& ds, const KernelSpec& kernel, const SolverConfig& config, int k,
           std::uint64_t seed, bool use_gs, double delta_scale, int jobs) {
            const CvResult r = cross_validate(ds, kernel, config, k, seed, use_gs, delta_scale, jobs);
            return py::make_tuple(r.accuracy, r.degenerate_folds);
        },
        py::arg("dataset"), py::arg("kernel"), py::arg("config"), py::arg("k") = 10,
        py::arg("seed") = 42, py::arg("use_gs") = false, py::arg("delta_scale") = 1.0,
        py::arg("jobs") = 1);

    m.def(
        "grid_search",
        [](const Dataset& ds, const std::string& family, std::vector<double> c_values,
           std::vector<double> gamma_values, const SolverConfig& base, int k, std::uint64_t seed,
           bool use_gs, double delta_scale, int jobs) {
            GridSpec grid = GridSpec::defaults();
            if (!c_values.empty()) grid.c_values = std::move(c_values);
            if (!gamma_values.empty()) grid.gamma_values = std::move(gamma_values);
            const GridResult r = grid_search(ds, family_from_name(family), grid, base, k, seed,
                                             use_gs, delta_scale, jobs);
            py::dict out;
            out["accuracy"] = r.accuracy;
            out["c"] = r.config.C;
            out["gamma"] = r.kernel.gamma;
            out["degenerate_folds"] = r.degenerate_folds;
            return out;
        },
        py::arg("dataset"), py::arg("family") = "linear", py::arg("c_values") = std::vector<double>{},
        py::arg("gamma_values") = std::vector<double>{}, py::arg("base") = SolverConfig{},
        py::arg("k") = 10, py::arg("seed") = 42, py::arg("use_gs") = false,
        py::arg("delta_scale") = 1.0, py::arg("jobs") = 1);

    m.def(
        "c_sweep",
        [](const Dataset& ds, const KernelSpec& kernel, const SolverConfig& base,
           const std::vector<double>& c_values, int k, std::uint64_t seed, double delta_scale,
           int jobs) {
            std::vector<std::tuple<double, double, double>> out;
            for (const SweepPoint& p : c_sweep(ds, kernel, base, c_values, k, seed, delta_scale, jobs)) {
                out.emplace_back(p.c, p.csvm_accuracy, p.gssvm_accuracy);
            }
            return out;
        },
        py::arg("dataset"), py::arg("kernel"), py::arg("base"), py::arg("c_values"),
        py::arg("k") = 10, py::arg("seed") = 42, py::arg("delta_scale") = 1.0, py::arg("jobs") = 1);
}

#include "gssvm/eval.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gssvm/errors.hpp"
#include "gssvm/model.hpp"
#include "gssvm/parallel.hpp"
#include "gssvm/text.hpp"
#include "gssvm/version.hpp"

namespace gssvm {

GridSpec GridSpec::defaults() {
    GridSpec g;
    for (int e = -5; e <= 15; e += 2) g.c_values.push_back(std::ldexp(1.0, e));
    for (int e = -15; e <= 3; e += 2) g.gamma_values.push_back(std::ldexp(1.0, e));
    return g;
}

namespace {

struct FoldOutcome {
    int correct = 0;
    int total = 0;
    bool degenerate = false;
};

FoldOutcome run_fold(const Dataset& ds, const Fold& fold, const KernelSpec& kernel,
                     const SolverConfig& config, bool use_gs, double delta_scale) {
    const Dataset train = subset(ds, fold.train);
    const CsvmModel model = train_csvm(train, kernel, config);

    FoldOutcome out;
    out.total = static_cast<int>(fold.test.size());
    double delta = 0.0;
    if (use_gs) {
        try {
            delta = apply_scaling(model, train, delta_scale).delta;
        } catch (const TrainError&) {
            out.degenerate = true;  // fall back to the unshifted boundary
        }
    }
    for (int idx : fold.test) {
        const double f = decision_value(model, ds.points[idx]) - delta;
        const int label = f < 0.0 ? -1 : +1;
        out.correct += (label == ds.labels[idx]);
    }
    return out;
}

std::string format_accuracy(double accuracy) {
    if (std::isnan(accuracy)) return "-";
    std::ostringstream ss;
    ss.setf(std::ios::fixed);
    ss.precision(2);
    ss << accuracy;
    return ss.str();
}

std::string grid_to_string(const std::vector<double>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ' ';
        out += format_double(values[i]);
    }
    return out;
}

}  // namespace

CvResult cross_validate(const Dataset& ds, const KernelSpec& kernel, const SolverConfig& config,
                        int k, std::uint64_t seed, bool use_gs, double delta_scale, int jobs) {
    const SplitPlan plan = stratified_kfold(ds, k, seed);
    std::vector<FoldOutcome> outcomes(plan.folds.size());
    parallel_for(plan.folds.size(), jobs, [&](std::size_t f) {
        outcomes[f] = run_fold(ds, plan.folds[f], kernel, config, use_gs, delta_scale);
    });

    CvResult result;
    int correct = 0, total = 0;
    for (const FoldOutcome& o : outcomes) {
        correct += o.correct;
        total += o.total;
        result.degenerate_folds += o.degenerate;
    }
    result.accuracy = 100.0 * correct / total;
    return result;
}

GridResult grid_search(const Dataset& ds, KernelFamily family, const GridSpec& grid,
                       const SolverConfig& base, int k, std::uint64_t seed, bool use_gs,
                       double delta_scale, int jobs) {
    if (grid.c_values.empty()) throw DataError("EmptyGrid", "no C values");
    std::vector<double> cs = grid.c_values;
    std::sort(cs.begin(), cs.end());
    std::vector<double> gammas{0.0};  // placeholder resolved to 1/n_features
    if (family == KernelFamily::rbf) {
        if (grid.gamma_values.empty()) throw DataError("EmptyGrid", "no gamma values");
        gammas = grid.gamma_values;
        std::sort(gammas.begin(), gammas.end());
    }

    struct Cell {
        KernelSpec kernel;
        SolverConfig config;
        CvResult cv;
    };
    std::vector<Cell> cells(cs.size() * gammas.size());
    // lexicographic (C, gamma) order; ties later resolve to the first best
    for (std::size_t ci = 0; ci < cs.size(); ++ci) {
        for (std::size_t gi = 0; gi < gammas.size(); ++gi) {
            Cell& cell = cells[ci * gammas.size() + gi];
            cell.kernel.family = family;
            cell.kernel.gamma = gammas[gi];
            cell.config = base;
            cell.config.C = cs[ci];
        }
    }
    parallel_for(cells.size(), jobs, [&](std::size_t i) {
        cells[i].cv = cross_validate(ds, cells[i].kernel, cells[i].config, k, seed, use_gs,
                                     delta_scale, 1);
    });

    const Cell* best = &cells.front();
    for (const Cell& cell : cells) {
        if (cell.cv.accuracy > best->cv.accuracy) best = &cell;
    }
    GridResult result;
    result.kernel = resolve_gamma(best->kernel, ds.n_features);
    result.config = best->config;
    result.accuracy = best->cv.accuracy;
    result.degenerate_folds = best->cv.degenerate_folds;
    return result;
}

EvalReport compare(const std::vector<Dataset>& datasets, const std::vector<KernelFamily>& kernels,
                   const GridSpec& grid, const SolverConfig& base, int k, std::uint64_t seed,
                   double delta_scale, int jobs) {
    if (datasets.empty() || kernels.empty()) {
        throw DataError("EmptyGrid", "compare needs at least one dataset and one kernel");
    }
    EvalReport report;
    report.grid = grid;
    report.base = base;
    report.delta_scale = delta_scale;
    report.folds = k;
    report.seed = seed;
    for (const Dataset& ds : datasets) {
        for (KernelFamily family : kernels) {
            ReportRow row;
            row.dataset = ds.name.empty() ? "unnamed" : ds.name;
            row.kernel = family_name(family);
            row.folds = k;
            row.seed = seed;
            try {
                const GridResult plain = grid_search(ds, family, grid, base, k, seed, false,
                                                     delta_scale, jobs);
                const GridResult scaled = grid_search(ds, family, grid, base, k, seed, true,
                                                      delta_scale, jobs);
                row.csvm_accuracy = plain.accuracy;
                row.gssvm_accuracy = scaled.accuracy;
                row.csvm_c = plain.config.C;
                row.gssvm_c = scaled.config.C;
                row.csvm_gamma = plain.kernel.gamma;
                row.gssvm_gamma = scaled.kernel.gamma;
                if (scaled.degenerate_folds > 0) {
                    row.note = "degenerate_folds=" + std::to_string(scaled.degenerate_folds);
                }
            } catch (const Error& e) {
                row.csvm_accuracy = std::nan("");
                row.gssvm_accuracy = std::nan("");
                row.note = e.name();
            }
            report.rows.push_back(std::move(row));
        }
    }
    return report;
}

std::string render_table(const EvalReport& report) {
    std::ostringstream out;
    out << "# gssvm " << kVersion << " comparison, " << report.folds << "-fold CV, seed "
        << report.seed << '\n';
    out << "# penalty " << penalty_name(report.base.penalty) << ", tol "
        << format_double(report.base.tol) << ", delta_scale " << format_double(report.delta_scale)
        << '\n';
    out << "# accuracy = pooled correct/total over folds, percent\n";
    out << "# C grid: " << grid_to_string(report.grid.c_values) << '\n';
    out << "# gamma grid (rbf): " << grid_to_string(report.grid.gamma_values) << '\n';

    std::vector<std::array<std::string, 7>> cells;
    cells.push_back({"dataset", "kernel", "csvm%", "gssvm%", "csvm_C", "gssvm_C", "note"});
    for (const ReportRow& row : report.rows) {
        cells.push_back({row.dataset, row.kernel, format_accuracy(row.csvm_accuracy),
                         format_accuracy(row.gssvm_accuracy), format_double(row.csvm_c),
                         format_double(row.gssvm_c), row.note});
    }
    std::array<std::size_t, 7> width{};
    for (const auto& row : cells) {
        for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
    }
    for (const auto& row : cells) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            out << row[c];
            if (c + 1 < row.size()) out << std::string(width[c] - row[c].size() + 2, ' ');
        }
        out << '\n';
    }
    return out.str();
}

std::string report_csv(const EvalReport& report) {
    std::string out;
    out += "# gssvm ";
    out += kVersion;
    out += " comparison report\n# penalty ";
    out += penalty_name(report.base.penalty);
    out += ", tol ";
    out += format_double(report.base.tol);
    out += ", delta_scale ";
    out += format_double(report.delta_scale);
    out += "\n# C grid: ";
    out += grid_to_string(report.grid.c_values);
    out += "\n# gamma grid (rbf): ";
    out += grid_to_string(report.grid.gamma_values);
    out += "\ndataset,kernel,csvm_accuracy,gssvm_accuracy,csvm_c,gssvm_c,csvm_gamma,gssvm_gamma,folds,seed,note\n";
    for (const ReportRow& row : report.rows) {
        out += row.dataset;
        out += ',';
        out += row.kernel;
        out += ',';
        out += format_double(row.csvm_accuracy);
        out += ',';
        out += format_double(row.gssvm_accuracy);
        out += ',';
        out += format_double(row.csvm_c);
        out += ',';
        out += format_double(row.gssvm_c);
        out += ',';
        out += format_double(row.csvm_gamma);
        out += ',';
        out += format_double(row.gssvm_gamma);
        out += ',';
        out += std::to_string(row.folds);
        out += ',';
        out += std::to_string(row.seed);
        out += ',';
        out += row.note;
        out += '\n';
    }
    return out;
}

std::vector<ReportRow> parse_report_csv(const std::string& text) {
    std::vector<ReportRow> rows;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {  // column header
            header_seen = true;
            continue;
        }
        auto fields = split_csv(line);
        if (fields.size() != 11) {
            throw DataError("MalformedLine", "line " + std::to_string(line_no) +
                                                 ": expected 11 fields, got " +
                                                 std::to_string(fields.size()));
        }
        auto real = [&](std::string_view tok) {
            auto v = parse_double(tok);
            if (!v) throw DataError("MalformedLine",
                                    "line " + std::to_string(line_no) + ": bad real field");
            return *v;
        };
        ReportRow row;
        row.dataset = std::string(fields[0]);
        row.kernel = std::string(fields[1]);
        row.csvm_accuracy = real(fields[2]);
        row.gssvm_accuracy = real(fields[3]);
        row.csvm_c = real(fields[4]);
        row.gssvm_c = real(fields[5]);
        row.csvm_gamma = real(fields[6]);
        row.gssvm_gamma = real(fields[7]);
        row.folds = static_cast<int>(real(fields[8]));
        row.seed = static_cast<std::uint64_t>(real(fields[9]));
        row.note = std::string(fields[10]);
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<SweepPoint> c_sweep(const Dataset& ds, const KernelSpec& kernel,
                                const SolverConfig& base, const std::vector<double>& c_values,
                                int k, std::uint64_t seed, double delta_scale, int jobs) {
    if (c_values.empty()) throw DataError("EmptyGrid", "no C values");
    std::vector<SweepPoint> curve(c_values.size());
    parallel_for(c_values.size(), jobs, [&](std::size_t i) {
        SolverConfig config = base;
        config.C = c_values[i];
        curve[i].c = config.C;
        curve[i].csvm_accuracy = cross_validate(ds, kernel, config, k, seed, false, delta_scale, 1).accuracy;
        curve[i].gssvm_accuracy = cross_validate(ds, kernel, config, k, seed, true, delta_scale, 1).accuracy;
    });
    return curve;
}

std::string sweep_csv(const std::vector<SweepPoint>& curve, const SolverConfig& base,
                      int folds, std::uint64_t seed) {
    std::string out = "# gssvm ";
    out += kVersion;
    out += " accuracy-vs-C sweep, ";
    out += std::to_string(folds);
    out += "-fold CV, seed ";
    out += std::to_string(seed);
    out += ", penalty ";
    out += penalty_name(base.penalty);
    out += "\nc,csvm_accuracy,gssvm_accuracy\n";
    for (const SweepPoint& p : curve) {
        out += format_double(p.c);
        out += ',';
        out += format_double(p.csvm_accuracy);
        out += ',';
        out += format_double(p.gssvm_accuracy);
        out += '\n';
    }
    return out;
}

std::string sweep_svg(const std::vector<SweepPoint>& curve) {
    constexpr int width = 640, height = 420, margin = 56;
    const int plot_w = width - 2 * margin;
    const int plot_h = height - 2 * margin;

    double lo = 100.0, hi = 0.0;
    for (const SweepPoint& p : curve) {
        lo = std::min({lo, p.csvm_accuracy, p.gssvm_accuracy});
        hi = std::max({hi, p.csvm_accuracy, p.gssvm_accuracy});
    }
    lo = std::max(0.0, lo - 2.0);
    hi = std::min(100.0, hi + 2.0);
    if (hi - lo < 1.0) hi = lo + 1.0;

    // x axis is the index of C, evenly spaced (C grids are geometric)
    auto px = [&](std::size_t i) {
        const double t = curve.size() > 1 ? double(i) / double(curve.size() - 1) : 0.5;
        return margin + t * plot_w;
    };
    auto py = [&](double acc) { return margin + (hi - acc) / (hi - lo) * plot_h; };

    auto polyline = [&](const char* color, auto value) {
        std::ostringstream ss;
        ss << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
        for (std::size_t i = 0; i < curve.size(); ++i) {
            if (i) ss << ' ';
            ss << px(i) << ',' << py(value(curve[i]));
        }
        ss << "\"/>\n";
        return ss.str();
    };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<line x1=\"" << margin << "\" y1=\"" << height - margin << "\" x2=\"" << width - margin
        << "\" y2=\"" << height - margin << "\" stroke=\"black\"/>\n";
    svg << "<line x1=\"" << margin << "\" y1=\"" << margin << "\" x2=\"" << margin << "\" y2=\""
        << height - margin << "\" stroke=\"black\"/>\n";
    for (std::size_t i = 0; i < curve.size(); ++i) {
        svg << "<text x=\"" << px(i) << "\" y=\"" << height - margin + 16
            << "\" font-size=\"9\" text-anchor=\"middle\">" << format_double(curve[i].c)
            << "</text>\n";
    }
    svg << "<text x=\"" << width / 2 << "\" y=\"" << height - 12
        << "\" font-size=\"12\" text-anchor=\"middle\">C</text>\n";
    svg << "<text x=\"16\" y=\"" << height / 2
        << "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 16 " << height / 2
        << ")\">accuracy %</text>\n";
    svg << "<text x=\"" << margin - 6 << "\" y=\"" << py(lo)
        << "\" font-size=\"9\" text-anchor=\"end\">" << format_accuracy(lo) << "</text>\n";
    svg << "<text x=\"" << margin - 6 << "\" y=\"" << py(hi)
        << "\" font-size=\"9\" text-anchor=\"end\">" << format_accuracy(hi) << "</text>\n";
    svg << polyline("#1f77b4", [](const SweepPoint& p) { return p.csvm_accuracy; });
    svg << polyline("#d62728", [](const SweepPoint& p) { return p.gssvm_accuracy; });
    svg << "<text x=\"" << width - margin << "\" y=\"" << margin - 24
        << "\" font-size=\"11\" text-anchor=\"end\" fill=\"#1f77b4\">csvm</text>\n";
    svg << "<text x=\"" << width - margin << "\" y=\"" << margin - 8
        << "\" font-size=\"11\" text-anchor=\"end\" fill=\"#d62728\">gssvm</text>\n";
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace gssvm

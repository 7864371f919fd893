#include "gssvm/model.hpp"

#include <fstream>
#include <sstream>

#include "gssvm/errors.hpp"
#include "gssvm/text.hpp"

namespace gssvm {

namespace {

int sign_or_positive(double v) { return v < 0.0 ? -1 : +1; }

[[noreturn]] void corrupt(int line_no, const std::string& detail) {
    throw DataError("CorruptModel", "line " + std::to_string(line_no) + ": " + detail);
}

void write_model(std::ostream& out, const GsModel& m, ModelKind kind) {
    const CsvmModel& base = m.base;
    out << "gssvm " << kModelFormatVersion << '\n';
    out << "mode " << (kind == ModelKind::csvm ? "csvm" : "gssvm") << '\n';
    out << "kernel " << family_name(base.kernel.family) << '\n';
    out << "gamma " << format_double(base.kernel.gamma) << '\n';
    out << "degree " << base.kernel.degree << '\n';
    out << "coef0 " << format_double(base.kernel.coef0) << '\n';
    out << "penalty " << penalty_name(base.config.penalty) << '\n';
    out << "c " << format_double(base.config.C) << '\n';
    out << "tol " << format_double(base.config.tol) << '\n';
    out << "n_features " << base.n_features << '\n';
    out << "bias " << format_double(base.bias) << '\n';
    out << "delta " << format_double(m.delta) << '\n';
    out << "delta_scale " << format_double(m.delta_scale) << '\n';
    out << "d1 " << format_double(m.d1) << '\n';
    out << "d2 " << format_double(m.d2) << '\n';
    out << "sv_count " << base.sv_count() << '\n';
    out << "SV\n";
    for (int i = 0; i < base.sv_count(); ++i) {
        out << format_double(base.sv_alpha[i] * base.sv_labels[i]);
        for (const Feature& f : base.sv_points[i]) {
            out << ' ' << f.index << ':' << format_double(f.value);
        }
        out << '\n';
    }
}

void save_to_path(const std::string& path, const GsModel& m, ModelKind kind) {
    std::ofstream out(path);
    if (!out) throw DataError("IoFailure", "cannot open '" + path + "' for writing");
    write_model(out, m, kind);
    if (!out) throw DataError("IoFailure", "short write to '" + path + "'");
}

}  // namespace

int predict(const CsvmModel& model, const SparseVector& x) {
    return sign_or_positive(decision_value(model, x));
}

int predict(const GsModel& model, const SparseVector& x) {
    return sign_or_positive(gs_decision_value(model, x));
}

void save_model(const CsvmModel& model, const std::string& path) {
    GsModel wrapper;
    wrapper.base = model;
    save_to_path(path, wrapper, ModelKind::csvm);
}

void save_model(const GsModel& model, const std::string& path) {
    save_to_path(path, model, ModelKind::gssvm);
}

LoadedModel load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("IoFailure", "cannot open '" + path + "' for reading");

    LoadedModel loaded;
    CsvmModel& base = loaded.model.base;
    std::string line;
    int line_no = 0;

    auto next_line = [&]() -> bool {
        if (!std::getline(in, line)) return false;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        return true;
    };

    if (!next_line()) corrupt(1, "empty file");
    {
        auto tokens = split_tokens(line);
        if (tokens.size() != 2 || tokens[0] != "gssvm") corrupt(line_no, "missing magic header");
        auto version = parse_int(tokens[1]);
        if (!version) corrupt(line_no, "bad version token");
        if (*version != kModelFormatVersion) {
            throw DataError("FormatVersionMismatch",
                            "file version " + std::to_string(*version) + ", expected " +
                                std::to_string(kModelFormatVersion));
        }
    }

    long sv_count = -1;
    bool in_header = true;
    while (in_header) {
        if (!next_line()) corrupt(line_no + 1, "truncated header, no SV section");
        if (line == "SV") break;
        auto tokens = split_tokens(line);
        if (tokens.size() != 2) corrupt(line_no, "expected 'key value'");
        const std::string_view key = tokens[0];
        const std::string value(tokens[1]);
        auto real = [&](double& slot) {
            auto v = parse_double(value);
            if (!v) corrupt(line_no, "bad real for '" + std::string(key) + "'");
            slot = *v;
        };
        if (key == "mode") {
            if (value == "csvm") {
                loaded.kind = ModelKind::csvm;
            } else if (value == "gssvm") {
                loaded.kind = ModelKind::gssvm;
            } else {
                corrupt(line_no, "unknown mode '" + value + "'");
            }
        } else if (key == "kernel") {
            base.kernel.family = family_from_name(value);
        } else if (key == "gamma") {
            real(base.kernel.gamma);
        } else if (key == "degree") {
            auto v = parse_int(value);
            if (!v || *v < 1) corrupt(line_no, "bad degree");
            base.kernel.degree = *v;
        } else if (key == "coef0") {
            real(base.kernel.coef0);
        } else if (key == "penalty") {
            base.config.penalty = penalty_from_name(value);
        } else if (key == "c") {
            real(base.config.C);
        } else if (key == "tol") {
            real(base.config.tol);
        } else if (key == "n_features") {
            auto v = parse_int(value);
            if (!v || *v < 0) corrupt(line_no, "bad n_features");
            base.n_features = *v;
        } else if (key == "bias") {
            real(base.bias);
        } else if (key == "delta") {
            real(loaded.model.delta);
        } else if (key == "delta_scale") {
            real(loaded.model.delta_scale);
        } else if (key == "d1") {
            real(loaded.model.d1);
        } else if (key == "d2") {
            real(loaded.model.d2);
        } else if (key == "sv_count") {
            auto v = parse_int(value);
            if (!v || *v < 0) corrupt(line_no, "bad sv_count");
            sv_count = *v;
        } else {
            corrupt(line_no, "unknown key '" + std::string(key) + "'");
        }
    }
    if (sv_count < 0) corrupt(line_no, "header is missing sv_count");

    for (long i = 0; i < sv_count; ++i) {
        if (!next_line()) corrupt(line_no + 1, "expected " + std::to_string(sv_count) + " SV lines");
        auto tokens = split_tokens(line);
        if (tokens.empty()) corrupt(line_no, "blank SV line");
        auto coef = parse_double(tokens[0]);
        if (!coef || *coef == 0.0) corrupt(line_no, "bad SV coefficient");
        SparseVector point;
        int prev_index = 0;
        for (std::size_t t = 1; t < tokens.size(); ++t) {
            const std::string_view tok = tokens[t];
            const std::size_t colon = tok.find(':');
            if (colon == std::string_view::npos) corrupt(line_no, "expected idx:val");
            auto index = parse_int(tok.substr(0, colon));
            auto value = parse_double(tok.substr(colon + 1));
            if (!index || *index <= prev_index || !value) corrupt(line_no, "bad feature token");
            prev_index = *index;
            point.push_back({*index, *value});
        }
        base.sv_points.push_back(std::move(point));
        base.sv_alpha.push_back(std::abs(*coef));
        base.sv_labels.push_back(sign_or_positive(*coef));
    }
    if (next_line() && !line.empty()) corrupt(line_no, "trailing content after SV section");
    return loaded;
}

}  // namespace gssvm

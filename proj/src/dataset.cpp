#include "gssvm/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

#include "gssvm/errors.hpp"
#include "gssvm/rng.hpp"
#include "gssvm/text.hpp"

namespace gssvm {

namespace {

[[noreturn]] void fail(const char* name, int line_no, const std::string& detail) {
    throw DataError(name, "line " + std::to_string(line_no) + ": " + detail);
}

bool blank(std::string_view line) {
    return line.find_first_not_of(" \t\r\f\v") == std::string_view::npos;
}

}  // namespace

bool same_data(const Dataset& a, const Dataset& b) {
    return a.points == b.points && a.labels == b.labels && a.n_features == b.n_features;
}

Dataset parse_svmlight(std::istream& in, std::string name) {
    Dataset ds;
    ds.name = std::move(name);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (blank(line) || line[0] == '#') continue;
        auto tokens = split_tokens(line);

        auto label = parse_double(tokens[0]);
        if (!label || std::isnan(*label)) fail("MalformedLine", line_no, "bad label token '" + std::string(tokens[0]) + "'");
        if (*label == 0.0) fail("ZeroLabel", line_no, "label 0 has no class");

        SparseVector point;
        point.reserve(tokens.size() - 1);
        int prev_index = 0;
        for (std::size_t t = 1; t < tokens.size(); ++t) {
            const std::string_view tok = tokens[t];
            const std::size_t colon = tok.find(':');
            if (colon == std::string_view::npos) fail("MalformedLine", line_no, "expected idx:val, got '" + std::string(tok) + "'");
            auto index = parse_int(tok.substr(0, colon));
            auto value = parse_double(tok.substr(colon + 1));
            if (!index || *index < 1 || !value) fail("MalformedLine", line_no, "bad feature token '" + std::string(tok) + "'");
            if (*index <= prev_index) fail("NonIncreasingIndex", line_no, "index " + std::to_string(*index) + " after " + std::to_string(prev_index));
            prev_index = *index;
            point.push_back({*index, *value});
            ds.n_features = std::max(ds.n_features, *index);
        }
        ds.points.push_back(std::move(point));
        ds.labels.push_back(*label > 0.0 ? +1 : -1);
    }
    if (ds.points.empty()) throw DataError("EmptyDataset", "no data lines");
    return ds;
}

Dataset parse_svmlight(const std::string& text, std::string name) {
    std::istringstream in(text);
    return parse_svmlight(in, std::move(name));
}

Dataset load_svmlight_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("IoFailure", "cannot open '" + path + "' for reading");
    std::string stem = path;
    if (auto slash = stem.find_last_of('/'); slash != std::string::npos) stem = stem.substr(slash + 1);
    if (auto dot = stem.find_last_of('.'); dot != std::string::npos && dot > 0) stem = stem.substr(0, dot);
    return parse_svmlight(in, stem);
}

std::string serialize_svmlight(const Dataset& ds) {
    std::string out;
    for (int i = 0; i < ds.size(); ++i) {
        out += ds.labels[i] > 0 ? "+1" : "-1";
        for (const Feature& f : ds.points[i]) {
            out += ' ';
            out += std::to_string(f.index);
            out += ':';
            out += format_double(f.value);
        }
        out += '\n';
    }
    return out;
}

void save_svmlight_file(const Dataset& ds, const std::string& path, const std::string& header_comment) {
    std::ofstream out(path);
    if (!out) throw DataError("IoFailure", "cannot open '" + path + "' for writing");
    if (!header_comment.empty()) {
        std::istringstream lines(header_comment);
        std::string line;
        while (std::getline(lines, line)) out << "# " << line << '\n';
    }
    out << serialize_svmlight(ds);
    if (!out) throw DataError("IoFailure", "short write to '" + path + "'");
}

SplitPlan stratified_kfold(const Dataset& ds, int k, std::uint64_t seed) {
    if (k < 2 || k > ds.size()) {
        throw DataError("BadK", "k=" + std::to_string(k) + " for " + std::to_string(ds.size()) + " points");
    }
    std::vector<int> pos, neg;
    for (int i = 0; i < ds.size(); ++i) (ds.labels[i] > 0 ? pos : neg).push_back(i);

    Rng rng(seed);
    rng.shuffle(pos);
    rng.shuffle(neg);

    SplitPlan plan;
    plan.k = k;
    plan.seed = seed;
    plan.folds.resize(k);
    auto deal = [&](const std::vector<int>& cls) {
        for (std::size_t i = 0; i < cls.size(); ++i) {
            plan.folds[i % k].test.push_back(cls[i]);
        }
    };
    deal(pos);
    deal(neg);

    for (Fold& fold : plan.folds) {
        std::sort(fold.test.begin(), fold.test.end());
        fold.train.reserve(ds.size() - fold.test.size());
        auto it = fold.test.begin();
        for (int i = 0; i < ds.size(); ++i) {
            if (it != fold.test.end() && *it == i) {
                ++it;
            } else {
                fold.train.push_back(i);
            }
        }
    }
    return plan;
}

Dataset subset(const Dataset& ds, const std::vector<int>& indices, std::string name) {
    Dataset out;
    out.name = name.empty() ? ds.name : std::move(name);
    out.n_features = ds.n_features;
    out.points.reserve(indices.size());
    out.labels.reserve(indices.size());
    for (int i : indices) {
        out.points.push_back(ds.points[i]);
        out.labels.push_back(ds.labels[i]);
    }
    return out;
}

}  // namespace gssvm

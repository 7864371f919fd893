#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace gssvm {

struct Feature {
    int index;  // 1-based, strictly increasing within a vector
    double value;

    bool operator==(const Feature&) const = default;
};

/// Sparse feature vector; absent indices are implicit zeros.
using SparseVector = std::vector<Feature>;

struct Dataset {
    std::vector<SparseVector> points;
    std::vector<int> labels;  // +1 / -1
    int n_features = 0;       // max feature index observed
    std::string name;

    int size() const { return static_cast<int>(points.size()); }
};

/// Same points, labels and feature count; the name tag is ignored.
bool same_data(const Dataset& a, const Dataset& b);

/// Parses svmlight text: `<label> <idx>:<val> ...` per line, lines starting
/// with `#` ignored. Labels are sign-mapped to +/-1 so raw numeric exports
/// load without preprocessing.
Dataset parse_svmlight(std::istream& in, std::string name = {});
Dataset parse_svmlight(const std::string& text, std::string name = {});
Dataset load_svmlight_file(const std::string& path);

/// Emits svmlight text with shortest round-trip decimals;
/// parse(serialize(ds)) reproduces ds exactly.
std::string serialize_svmlight(const Dataset& ds);
void save_svmlight_file(const Dataset& ds, const std::string& path,
                        const std::string& header_comment = {});

struct Fold {
    std::vector<int> train;
    std::vector<int> test;
};

struct SplitPlan {
    std::vector<Fold> folds;
    int k = 0;
    std::uint64_t seed = 0;
};

/// Stratified k-fold: per-class seeded shuffle, then round-robin dealing, so
/// per-fold class counts differ from an even split by at most one point.
/// Deterministic in (ds, k, seed).
SplitPlan stratified_kfold(const Dataset& ds, int k, std::uint64_t seed);

/// New dataset holding the given rows (in the given order).
Dataset subset(const Dataset& ds, const std::vector<int>& indices, std::string name = {});

}  // namespace gssvm

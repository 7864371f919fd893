#pragma once

#include <list>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "gssvm/dataset.hpp"

namespace gssvm {

enum class KernelFamily { linear, rbf, poly };

const char* family_name(KernelFamily family);
KernelFamily family_from_name(const std::string& name);

struct KernelSpec {
    KernelFamily family = KernelFamily::linear;
    double gamma = 0.0;  // <= 0 requests the 1/n_features default
    int degree = 3;
    double coef0 = 0.0;
};

/// Replaces a non-positive gamma with the 1/n_features convention.
KernelSpec resolve_gamma(KernelSpec spec, int n_features);

double dot(const SparseVector& a, const SparseVector& b);
double squared_distance(const SparseVector& a, const SparseVector& b);

/// linear: a.b   rbf: exp(-gamma ||a-b||^2)   poly: (gamma a.b + coef0)^degree
double kernel_eval(const KernelSpec& spec, const SparseVector& a, const SparseVector& b);

/// Full l x l kernel matrix; upper triangle computed, lower mirrored, so the
/// result is bit-exactly symmetric.
std::vector<std::vector<double>> gram(const KernelSpec& spec, const Dataset& ds);

/// Kernel rows for the solver and projection paths. Small problems get a
/// dense precomputed matrix; above `dense_limit` rows are computed on demand
/// and kept in an LRU cache. One instance per training job; rows returned by
/// row() stay valid until the next row() call in the LRU regime.
class GramCache {
public:
    GramCache(const KernelSpec& spec, const Dataset& ds, int dense_limit = 10000,
              int max_cached_rows = 256);

    std::span<const double> row(int i);
    double diag(int i) const { return diag_[i]; }
    int size() const { return l_; }

private:
    std::vector<double> compute_row(int i) const;

    const KernelSpec spec_;
    const Dataset& ds_;
    int l_;
    bool dense_;
    std::size_t max_cached_rows_;
    std::vector<std::vector<double>> full_;  // dense mode
    std::list<std::pair<int, std::vector<double>>> lru_;
    std::unordered_map<int, std::list<std::pair<int, std::vector<double>>>::iterator> lookup_;
    std::vector<double> diag_;
};

}  // namespace gssvm

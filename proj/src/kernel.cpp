#include "gssvm/kernel.hpp"

#include <cmath>
#include <stdexcept>

#include "gssvm/errors.hpp"

namespace gssvm {

const char* family_name(KernelFamily family) {
    switch (family) {
        case KernelFamily::linear: return "linear";
        case KernelFamily::rbf: return "rbf";
        case KernelFamily::poly: return "poly";
    }
    return "?";
}

KernelFamily family_from_name(const std::string& name) {
    if (name == "linear") return KernelFamily::linear;
    if (name == "rbf" || name == "gaussian") return KernelFamily::rbf;
    if (name == "poly" || name == "polynomial") return KernelFamily::poly;
    throw DataError("UnknownKernel", "'" + name + "' is not linear|rbf|poly");
}

KernelSpec resolve_gamma(KernelSpec spec, int n_features) {
    if (spec.gamma <= 0.0) spec.gamma = 1.0 / static_cast<double>(n_features > 0 ? n_features : 1);
    return spec;
}

double dot(const SparseVector& a, const SparseVector& b) {
    double sum = 0.0;
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (ia->index == ib->index) {
            sum += ia->value * ib->value;
            ++ia;
            ++ib;
        } else if (ia->index < ib->index) {
            ++ia;
        } else {
            ++ib;
        }
    }
    return sum;
}

double squared_distance(const SparseVector& a, const SparseVector& b) {
    double sum = 0.0;
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() || ib != b.end()) {
        double d;
        if (ib == b.end() || (ia != a.end() && ia->index < ib->index)) {
            d = ia->value;
            ++ia;
        } else if (ia == a.end() || ib->index < ia->index) {
            d = ib->value;
            ++ib;
        } else {
            d = ia->value - ib->value;
            ++ia;
            ++ib;
        }
        sum += d * d;
    }
    return sum;
}

namespace {

// Integer power by squaring; deterministic across libm versions.
double powi(double base, int times) {
    double tmp = base, ret = 1.0;
    for (int t = times; t > 0; t /= 2) {
        if (t % 2 == 1) ret *= tmp;
        tmp = tmp * tmp;
    }
    return ret;
}

}  // namespace

double kernel_eval(const KernelSpec& spec, const SparseVector& a, const SparseVector& b) {
    switch (spec.family) {
        case KernelFamily::linear:
            return dot(a, b);
        case KernelFamily::rbf:
            return std::exp(-spec.gamma * squared_distance(a, b));
        case KernelFamily::poly:
            return powi(spec.gamma * dot(a, b) + spec.coef0, spec.degree);
    }
    return 0.0;
}

std::vector<std::vector<double>> gram(const KernelSpec& spec, const Dataset& ds) {
    const int l = ds.size();
    std::vector<std::vector<double>> g(l, std::vector<double>(l));
    for (int i = 0; i < l; ++i) {
        for (int j = i; j < l; ++j) {
            const double v = kernel_eval(spec, ds.points[i], ds.points[j]);
            g[i][j] = v;
            g[j][i] = v;
        }
    }
    return g;
}

GramCache::GramCache(const KernelSpec& spec, const Dataset& ds, int dense_limit, int max_cached_rows)
    : spec_(spec),
      ds_(ds),
      l_(ds.size()),
      dense_(ds.size() <= dense_limit),
      max_cached_rows_(static_cast<std::size_t>(max_cached_rows > 1 ? max_cached_rows : 2)) {
    diag_.resize(l_);
    if (dense_) {
        full_.assign(l_, std::vector<double>(l_));
        for (int i = 0; i < l_; ++i) {
            for (int j = i; j < l_; ++j) {
                const double v = kernel_eval(spec_, ds_.points[i], ds_.points[j]);
                full_[i][j] = v;
                full_[j][i] = v;
            }
        }
        for (int i = 0; i < l_; ++i) diag_[i] = full_[i][i];
    } else {
        for (int i = 0; i < l_; ++i) diag_[i] = kernel_eval(spec_, ds_.points[i], ds_.points[i]);
    }
}

std::vector<double> GramCache::compute_row(int i) const {
    std::vector<double> row(l_);
    for (int j = 0; j < l_; ++j) row[j] = kernel_eval(spec_, ds_.points[i], ds_.points[j]);
    return row;
}

std::span<const double> GramCache::row(int i) {
    if (dense_) return full_[i];
    if (auto it = lookup_.find(i); it != lookup_.end()) {
        lru_.splice(lru_.begin(), lru_, it->second);  // move to front
        return it->second->second;
    }
    lru_.emplace_front(i, compute_row(i));
    lookup_[i] = lru_.begin();
    if (lru_.size() > max_cached_rows_) {
        lookup_.erase(lru_.back().first);
        lru_.pop_back();
    }
    return lru_.front().second;
}

}  // namespace gssvm

#pragma once

#include <string>

#include "gssvm/scaling.hpp"

namespace gssvm {

inline constexpr int kModelFormatVersion = 1;

enum class ModelKind { csvm, gssvm };

/// sign(decision value), ties to +1.
int predict(const CsvmModel& model, const SparseVector& x);

/// sign(decision value - delta), ties to +1.
int predict(const GsModel& model, const SparseVector& x);

/// Line-oriented UTF-8 model file, format version 1. Reals are written with
/// shortest round-trip decimals so load(save(m)) reproduces every decision
/// value bit-exactly. SV coefficients are stored as the product alpha*y.
void save_model(const CsvmModel& model, const std::string& path);
void save_model(const GsModel& model, const std::string& path);

struct LoadedModel {
    ModelKind kind = ModelKind::csvm;
    GsModel model;  // delta == 0 for plain C-SVM files

    int predict_point(const SparseVector& x) const {
        return kind == ModelKind::csvm ? predict(model.base, x) : predict(model, x);
    }
    double decision(const SparseVector& x) const {
        return kind == ModelKind::csvm ? decision_value(model.base, x)
                                       : gs_decision_value(model, x);
    }
};

LoadedModel load_model(const std::string& path);

}  // namespace gssvm

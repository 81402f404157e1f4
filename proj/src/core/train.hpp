#pragma once

#include <optional>

#include "core/eval.hpp"
#include "core/model.hpp"

namespace zsl {

struct TrainConfig {
    std::size_t hidden_size = 64;
    Activation activation = Activation::sigmoid;
    LabelMode mode = LabelMode::du;
    double q = 0.3;
    double tau = 0.5;
    double learning_rate = 0.015;  // >= 0; 0 leaves the init untouched
    std::size_t epochs = 100;
    std::size_t batch_size = 64;
    double lambda_l2 = 0.0;
    double gamma_l1 = 0.0;
    std::uint64_t seed = 1;
    bool standardize = true;
};

struct EpochStats {
    double loss = 0.0;                 // batch-size-weighted mean objective over the epoch
    std::optional<double> val_ah;      // GZSL A_H on the validation sets, if provided
};

struct TrainHistory {
    std::vector<EpochStats> epochs;  // one entry per completed epoch
};

struct TrainResult {
    ModelParams params;
    TrainHistory history;
};

// Optional held-out sets monitored (never trained on) once per epoch.
struct ValSets {
    const FeatureSet* test_seen = nullptr;
    const FeatureSet* test_unseen = nullptr;
};

// Plain mini-batch SGD on the soft-label objective. Each epoch shuffles the
// sample order (Fisher-Yates on a dedicated RNG stream), partitions into
// batches (last one may be short) and applies theta <- theta - lr*grad.
// Deterministic given (config, data). Aborts with a numeric error naming the
// epoch and batch if the loss goes non-finite.
//
// With config.standardize, features are standardized with moments fitted on
// train_set, and the transform is folded into w1/b1 afterwards, so the
// returned model (and any saved checkpoint) consumes raw features.
TrainResult train(const TrainConfig& config, const AttributeMatrix& attrs, const FeatureSet& train_set,
                  const ValSets* val = nullptr);

// Validation protocol for hyperparameter selection when no real unseen data
// may be touched: hold out pseudo_unseen of the seen classes as
// validation-unseen (their samples all become validation data), and a
// holdout_fraction share of every remaining class's samples as
// validation-seen. Real unseen classes are dropped entirely.
struct ValSplit {
    std::size_t pseudo_unseen = 3;
    double holdout_fraction = 0.25;
    std::uint64_t seed = 99;
};

struct CrossValResult {
    std::size_t best_index = 0;               // argmax validation A_H, earliest on ties
    std::vector<GzslMetrics> metrics;         // one per grid entry
};

CrossValResult cross_validate(std::span<const TrainConfig> grid, const AttributeMatrix& attrs,
                              const FeatureSet& train_set, const ValSplit& split);

}  // namespace zsl

#pragma once

#include "core/model.hpp"

namespace zsl {

struct TrainConfig;  // train.hpp; sweeps retrain per grid point

struct GzslMetrics {
    double a_seen = 0.0;
    double a_unseen = 0.0;
    double a_harmonic = 0.0;
};

// 2ab/(a+b), 0 when a+b = 0.
double harmonic_mean(double a_seen, double a_unseen);

// Macro accuracy: mean over the classes of class_set that actually appear in
// truths of that class's own accuracy. Classes absent from truths contribute
// nothing (they are skipped, not counted as 0).
double per_class_accuracy(std::span<const std::uint32_t> predictions, std::span<const std::uint32_t> truths,
                          std::span<const std::uint32_t> class_set);

// Argmax of the class scores over all classes / over unseen classes only
// (returned indices are always global). Ties resolve to the lowest index.
std::vector<std::uint32_t> predict_classes(const ModelParams& params, const FeatureSet& data);
std::vector<std::uint32_t> predict_classes_unseen_only(const ModelParams& params, const FeatureSet& data);

// GZSL protocol: argmax over all C classes; A_S from test_seen, A_U from
// test_unseen, A_H their harmonic mean.
GzslMetrics evaluate_gzsl(const ModelParams& params, const FeatureSet& test_seen, const FeatureSet& test_unseen);

// Classic ZSL protocol: argmax restricted to unseen classes; per-class
// accuracy over test_unseen. Always >= the GZSL a_unseen for the same model
// and data (restricting candidates to a superset of the truth cannot help).
double evaluate_zsl(const ModelParams& params, const FeatureSet& test_unseen);

struct SweepRow {
    double value = 0.0;  // the swept q or tau
    GzslMetrics metrics;
};

struct SweepResult {
    std::vector<SweepRow> rows;      // ascending by value
    std::size_t best_index = 0;      // argmax a_harmonic, earliest on ties
};

enum class SweepParam : std::uint8_t { q = 0, tau = 1 };

// Trains one model per grid value (same seed for every point, so the curve
// reflects the hyperparameter rather than init noise) and evaluates GZSL.
// With repeats > 1, each point averages metrics over repeats trainings seeded
// seed, seed+1, ... (a_harmonic is averaged per trial, not recomputed from
// the averaged accuracies).
SweepResult sweep(const TrainConfig& base, SweepParam param, std::span<const double> values,
                  const AttributeMatrix& attrs, const FeatureSet& train_set, const FeatureSet& test_seen,
                  const FeatureSet& test_unseen, std::size_t repeats = 1);

SweepResult sweep_q(const TrainConfig& base, const AttributeMatrix& attrs, const FeatureSet& train_set,
                    const FeatureSet& test_seen, const FeatureSet& test_unseen, std::span<const double> q_values,
                    std::size_t repeats = 1);
SweepResult sweep_tau(const TrainConfig& base, const AttributeMatrix& attrs, const FeatureSet& train_set,
                      const FeatureSet& test_seen, const FeatureSet& test_unseen, std::span<const double> tau_values,
                      std::size_t repeats = 1);

}  // namespace zsl

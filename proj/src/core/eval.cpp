#include "core/eval.hpp"

#include <algorithm>
#include <string>

#include "core/error.hpp"
#include "core/train.hpp"

namespace zsl {

namespace {

void check_eval_set(const ModelParams& params, const FeatureSet& data, const char* what) {
    if (data.size() == 0) fail(ErrorCode::invalid_argument, std::string(what) + ": empty test set");
    if (data.dim != params.input_dim())
        fail(ErrorCode::dimension_mismatch, std::string(what) + ": feature dimension " + std::to_string(data.dim) +
                                                " vs model input dimension " + std::to_string(params.input_dim()));
    if (data.num_classes != params.attrs.num_classes())
        fail(ErrorCode::dimension_mismatch, std::string(what) + ": class count " + std::to_string(data.num_classes) +
                                                " vs model class count " +
                                                std::to_string(params.attrs.num_classes()));
}

std::uint32_t argmax_range(const Vector& s, std::size_t first, std::size_t last) {
    std::size_t best = first;
    for (std::size_t k = first + 1; k < last; ++k)
        if (s[k] > s[best]) best = k;  // strict: ties keep the lowest index
    return static_cast<std::uint32_t>(best);
}

std::vector<std::uint32_t> class_range(std::size_t first, std::size_t last) {
    std::vector<std::uint32_t> ids;
    ids.reserve(last - first);
    for (std::size_t k = first; k < last; ++k) ids.push_back(static_cast<std::uint32_t>(k));
    return ids;
}

}  // namespace

double harmonic_mean(double a_seen, double a_unseen) {
    const double sum = a_seen + a_unseen;
    return sum > 0.0 ? 2.0 * a_seen * a_unseen / sum : 0.0;
}

double per_class_accuracy(std::span<const std::uint32_t> predictions, std::span<const std::uint32_t> truths,
                          std::span<const std::uint32_t> class_set) {
    if (truths.empty()) fail(ErrorCode::invalid_argument, "per_class_accuracy: empty input");
    if (predictions.size() != truths.size())
        fail(ErrorCode::invalid_argument, "per_class_accuracy: prediction/truth length mismatch");
    if (class_set.empty()) fail(ErrorCode::invalid_argument, "per_class_accuracy: empty class set");

    const std::uint32_t max_class = *std::max_element(class_set.begin(), class_set.end());
    std::vector<std::size_t> total(max_class + 1, 0), correct(max_class + 1, 0);
    std::vector<bool> in_set(max_class + 1, false);
    for (std::uint32_t c : class_set) in_set[c] = true;
    for (std::size_t i = 0; i < truths.size(); ++i) {
        const std::uint32_t t = truths[i];
        if (t > max_class || !in_set[t])
            fail(ErrorCode::invalid_argument,
                 "per_class_accuracy: truth label " + std::to_string(t) + " outside the class set");
        ++total[t];
        if (predictions[i] == t) ++correct[t];
    }
    double acc_sum = 0.0;
    std::size_t classes = 0;
    for (std::uint32_t c : class_set) {
        if (total[c] == 0) continue;  // absent classes contribute nothing
        acc_sum += static_cast<double>(correct[c]) / static_cast<double>(total[c]);
        ++classes;
    }
    return acc_sum / static_cast<double>(classes);
}

std::vector<std::uint32_t> predict_classes(const ModelParams& params, const FeatureSet& data) {
    check_eval_set(params, data, "predict_classes");
    std::vector<std::uint32_t> out;
    out.reserve(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) {
        const Vector s = scores(data.feature(i), params);
        out.push_back(argmax_range(s, 0, s.size()));
    }
    return out;
}

std::vector<std::uint32_t> predict_classes_unseen_only(const ModelParams& params, const FeatureSet& data) {
    check_eval_set(params, data, "predict_classes_unseen_only");
    std::vector<std::uint32_t> out;
    out.reserve(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) {
        const Vector s = scores(data.feature(i), params);
        out.push_back(argmax_range(s, params.attrs.num_seen, s.size()));
    }
    return out;
}

GzslMetrics evaluate_gzsl(const ModelParams& params, const FeatureSet& test_seen, const FeatureSet& test_unseen) {
    check_eval_set(params, test_seen, "evaluate_gzsl(test_seen)");
    check_eval_set(params, test_unseen, "evaluate_gzsl(test_unseen)");
    const std::size_t num_seen = params.attrs.num_seen;
    for (std::uint32_t label : test_seen.labels)
        if (label >= num_seen)
            fail(ErrorCode::invalid_argument, "evaluate_gzsl: test_seen contains unseen-class label " +
                                                  std::to_string(label));
    for (std::uint32_t label : test_unseen.labels)
        if (label < num_seen)
            fail(ErrorCode::invalid_argument, "evaluate_gzsl: test_unseen contains seen-class label " +
                                                  std::to_string(label));

    GzslMetrics m;
    const auto seen_set = class_range(0, num_seen);
    const auto unseen_set = class_range(num_seen, params.attrs.num_classes());
    m.a_seen = per_class_accuracy(predict_classes(params, test_seen), test_seen.labels, seen_set);
    m.a_unseen = per_class_accuracy(predict_classes(params, test_unseen), test_unseen.labels, unseen_set);
    m.a_harmonic = harmonic_mean(m.a_seen, m.a_unseen);
    return m;
}

double evaluate_zsl(const ModelParams& params, const FeatureSet& test_unseen) {
    check_eval_set(params, test_unseen, "evaluate_zsl");
    const std::size_t num_seen = params.attrs.num_seen;
    for (std::uint32_t label : test_unseen.labels)
        if (label < num_seen)
            fail(ErrorCode::invalid_argument,
                 "evaluate_zsl: test set contains seen-class label " + std::to_string(label));
    const auto unseen_set = class_range(num_seen, params.attrs.num_classes());
    return per_class_accuracy(predict_classes_unseen_only(params, test_unseen), test_unseen.labels, unseen_set);
}

SweepResult sweep(const TrainConfig& base, SweepParam param, std::span<const double> values,
                  const AttributeMatrix& attrs, const FeatureSet& train_set, const FeatureSet& test_seen,
                  const FeatureSet& test_unseen, std::size_t repeats) {
    if (values.empty()) fail(ErrorCode::invalid_argument, "sweep: empty value list");
    if (repeats == 0) fail(ErrorCode::invalid_argument, "sweep: repeats must be >= 1");
    for (double v : values) {
        if (param == SweepParam::q && !(v >= 0.0 && v <= 1.0))
            fail(ErrorCode::invalid_argument, "sweep: q values must be in [0,1]");
        if (param == SweepParam::tau && !(v > 0.0)) fail(ErrorCode::invalid_argument, "sweep: tau values must be > 0");
    }

    std::vector<double> grid(values.begin(), values.end());
    std::sort(grid.begin(), grid.end());

    SweepResult result;
    result.rows.reserve(grid.size());
    for (double value : grid) {
        TrainConfig config = base;
        (param == SweepParam::q ? config.q : config.tau) = value;
        GzslMetrics mean;
        for (std::size_t trial = 0; trial < repeats; ++trial) {
            config.seed = base.seed + trial;
            const TrainResult trained = train(config, attrs, train_set);
            const GzslMetrics m = evaluate_gzsl(trained.params, test_seen, test_unseen);
            mean.a_seen += m.a_seen;
            mean.a_unseen += m.a_unseen;
            mean.a_harmonic += m.a_harmonic;
        }
        const double inv = 1.0 / static_cast<double>(repeats);
        mean.a_seen *= inv;
        mean.a_unseen *= inv;
        mean.a_harmonic *= inv;
        result.rows.push_back({value, mean});
    }
    for (std::size_t i = 1; i < result.rows.size(); ++i)
        if (result.rows[i].metrics.a_harmonic > result.rows[result.best_index].metrics.a_harmonic)
            result.best_index = i;
    return result;
}

SweepResult sweep_q(const TrainConfig& base, const AttributeMatrix& attrs, const FeatureSet& train_set,
                    const FeatureSet& test_seen, const FeatureSet& test_unseen, std::span<const double> q_values,
                    std::size_t repeats) {
    return sweep(base, SweepParam::q, q_values, attrs, train_set, test_seen, test_unseen, repeats);
}

SweepResult sweep_tau(const TrainConfig& base, const AttributeMatrix& attrs, const FeatureSet& train_set,
                      const FeatureSet& test_seen, const FeatureSet& test_unseen, std::span<const double> tau_values,
                      std::size_t repeats) {
    return sweep(base, SweepParam::tau, tau_values, attrs, train_set, test_seen, test_unseen, repeats);
}

}  // namespace zsl

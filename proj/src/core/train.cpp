#include "core/train.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "core/error.hpp"
#include "core/rng.hpp"

namespace zsl {

namespace {

void check_config(const TrainConfig& c) {
    if (c.hidden_size == 0) fail(ErrorCode::invalid_argument, "hidden_size must be >= 1");
    if (c.epochs == 0) fail(ErrorCode::invalid_argument, "epochs must be >= 1");
    if (c.batch_size == 0) fail(ErrorCode::invalid_argument, "batch_size must be >= 1");
    if (!(c.learning_rate >= 0.0)) fail(ErrorCode::invalid_argument, "learning_rate must be >= 0");
    if (!(c.q >= 0.0 && c.q <= 1.0)) fail(ErrorCode::invalid_argument, "q must be in [0,1]");
    if (!(c.tau > 0.0)) fail(ErrorCode::invalid_argument, "tau must be > 0");
    if (!(c.lambda_l2 >= 0.0)) fail(ErrorCode::invalid_argument, "lambda_l2 must be >= 0");
    if (!(c.gamma_l1 >= 0.0)) fail(ErrorCode::invalid_argument, "gamma_l1 must be >= 0");
}

void check_train_data(const AttributeMatrix& attrs, const FeatureSet& train_set) {
    if (train_set.size() == 0) fail(ErrorCode::invalid_argument, "empty training set");
    if (train_set.num_classes != attrs.num_classes())
        fail(ErrorCode::dimension_mismatch,
             "training set declares " + std::to_string(train_set.num_classes) + " classes, attribute matrix has " +
                 std::to_string(attrs.num_classes()));
    // No-unseen-leakage contract: training data must be seen-class only.
    for (std::size_t i = 0; i < train_set.size(); ++i)
        if (train_set.labels[i] >= attrs.num_seen)
            fail(ErrorCode::invalid_argument, "training sample " + std::to_string(i) + " has unseen-class label " +
                                                  std::to_string(train_set.labels[i]));
}

void sgd_step(Matrix& w, const Matrix& g, double lr) {
    for (std::size_t i = 0; i < w.data().size(); ++i) w.data()[i] -= lr * g.data()[i];
}

void sgd_step(Vector& b, const Vector& g, double lr) {
    for (std::size_t i = 0; i < b.size(); ++i) b[i] -= lr * g[i];
}

// Rewrites w1/b1 so the model applies the standardization itself:
// w1'·x + b1' = w1·((x - mean)/scale) + b1.
void fold_standardization(ModelParams& params, const Standardization& s) {
    for (std::size_t r = 0; r < params.w1.rows(); ++r) {
        auto row = params.w1.row(r);
        for (std::size_t c = 0; c < row.size(); ++c) row[c] /= s.scale[c];
    }
    const Vector shift = matvec(params.w1, s.mean);
    for (std::size_t r = 0; r < params.b1.size(); ++r) params.b1[r] -= shift[r];
}

}  // namespace

TrainResult train(const TrainConfig& config, const AttributeMatrix& attrs, const FeatureSet& train_set,
                  const ValSets* val) {
    check_config(config);
    check_train_data(attrs, train_set);

    Standardization standardization;
    FeatureSet data = train_set;
    if (config.standardize) {
        standardization = fit_standardization(train_set);
        data = standardized(train_set, standardization);
    }
    FeatureSet val_seen, val_unseen;
    const bool monitor = val != nullptr && val->test_seen != nullptr && val->test_unseen != nullptr;
    if (monitor) {
        val_seen = config.standardize ? standardized(*val->test_seen, standardization) : *val->test_seen;
        val_unseen = config.standardize ? standardized(*val->test_unseen, standardization) : *val->test_unseen;
    }

    const SoftLabelTable table = build_table(attrs, {config.mode, config.q, config.tau});
    ModelParams params = init_params(attrs, data.dim, config.hidden_size, config.activation, config.seed);
    const RegConfig reg{config.lambda_l2, config.gamma_l1};
    Rng shuffle_rng(stream_seed(config.seed, kStreamShuffle));

    const std::size_t n = data.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});

    TrainResult result;
    result.history.epochs.reserve(config.epochs);
    for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
        shuffle(order, shuffle_rng);
        double loss_sum = 0.0;
        for (std::size_t start = 0; start < n; start += config.batch_size) {
            const std::size_t len = std::min(config.batch_size, n - start);
            const std::span<const std::size_t> batch(order.data() + start, len);
            double batch_loss = 0.0;
            const Gradients g = gradients(data, batch, table, params, reg, &batch_loss);
            if (!std::isfinite(batch_loss))
                fail(ErrorCode::numeric, "non-finite training loss at epoch " + std::to_string(epoch + 1) +
                                             ", batch " + std::to_string(start / config.batch_size + 1) +
                                             "; reduce the learning rate");
            loss_sum += batch_loss * static_cast<double>(len);
            sgd_step(params.w1, g.w1, config.learning_rate);
            sgd_step(params.b1, g.b1, config.learning_rate);
            sgd_step(params.w2, g.w2, config.learning_rate);
            sgd_step(params.b2, g.b2, config.learning_rate);
        }
        EpochStats stats;
        stats.loss = loss_sum / static_cast<double>(n);
        if (monitor) stats.val_ah = evaluate_gzsl(params, val_seen, val_unseen).a_harmonic;
        result.history.epochs.push_back(stats);
    }

    if (config.standardize) fold_standardization(params, standardization);
    result.params = std::move(params);
    return result;
}

CrossValResult cross_validate(std::span<const TrainConfig> grid, const AttributeMatrix& attrs,
                              const FeatureSet& train_set, const ValSplit& split) {
    if (grid.empty()) fail(ErrorCode::invalid_argument, "cross_validate: empty config grid");
    check_train_data(attrs, train_set);
    if (split.pseudo_unseen == 0 || split.pseudo_unseen >= attrs.num_seen)
        fail(ErrorCode::invalid_argument, "cross_validate: pseudo_unseen must be in [1, num_seen)");
    if (!(split.holdout_fraction > 0.0 && split.holdout_fraction < 1.0))
        fail(ErrorCode::invalid_argument, "cross_validate: holdout_fraction must be in (0,1)");

    // Pick the pseudo-unseen classes by shuffling the seen class ids.
    Rng rng(stream_seed(split.seed, kStreamValSplit));
    std::vector<std::uint32_t> seen_ids(attrs.num_seen);
    std::iota(seen_ids.begin(), seen_ids.end(), 0u);
    shuffle(seen_ids, rng);
    std::vector<std::uint32_t> held(seen_ids.begin(), seen_ids.begin() + split.pseudo_unseen);
    std::vector<std::uint32_t> kept(seen_ids.begin() + split.pseudo_unseen, seen_ids.end());
    std::sort(held.begin(), held.end());
    std::sort(kept.begin(), kept.end());

    // Validation-time attribute matrix: kept seen classes first, then the
    // held-out ones as the unseen block; real unseen classes are dropped.
    // source_rows records each new column's original class index.
    AttributeMatrix val_attrs;
    val_attrs.dim_a = attrs.dim_a;
    val_attrs.num_seen = kept.size();
    val_attrs.num_unseen = held.size();
    val_attrs.vectors = Matrix(attrs.num_seen, attrs.dim_a);
    std::vector<std::uint32_t> new_index(attrs.num_seen);
    auto add_class = [&](std::uint32_t original) {
        const std::size_t k = val_attrs.class_names.size();
        const auto src = attrs.attribute(original);
        std::copy(src.begin(), src.end(), val_attrs.vectors.row(k).begin());
        val_attrs.class_names.push_back(attrs.class_names[original]);
        val_attrs.source_rows.push_back(original);
        new_index[original] = static_cast<std::uint32_t>(k);
    };
    for (std::uint32_t c : kept) add_class(c);
    for (std::uint32_t c : held) add_class(c);

    // Partition samples. Held-out classes contribute all their samples to the
    // validation-unseen set; kept classes put their last ceil-rounded
    // holdout_fraction (at least 1, at most all-but-1 when possible) into
    // validation-seen and the rest into the inner training set.
    std::vector<std::vector<std::size_t>> by_class(attrs.num_seen);
    for (std::size_t i = 0; i < train_set.size(); ++i) by_class[train_set.labels[i]].push_back(i);
    std::vector<bool> is_held(attrs.num_seen, false);
    for (std::uint32_t c : held) is_held[c] = true;

    std::vector<std::size_t> inner_idx, val_seen_idx, val_unseen_idx;
    for (std::uint32_t c = 0; c < attrs.num_seen; ++c) {
        const auto& samples = by_class[c];
        if (is_held[c]) {
            val_unseen_idx.insert(val_unseen_idx.end(), samples.begin(), samples.end());
            continue;
        }
        std::size_t holdout = 0;
        if (samples.size() >= 2) {
            holdout = static_cast<std::size_t>(split.holdout_fraction * static_cast<double>(samples.size()) + 0.5);
            holdout = std::clamp<std::size_t>(holdout, 1, samples.size() - 1);
        }
        const std::size_t cut = samples.size() - holdout;
        inner_idx.insert(inner_idx.end(), samples.begin(), samples.begin() + cut);
        val_seen_idx.insert(val_seen_idx.end(), samples.begin() + cut, samples.end());
    }
    if (inner_idx.empty() || val_seen_idx.empty() || val_unseen_idx.empty())
        fail(ErrorCode::invalid_argument, "cross_validate: split left an empty partition; adjust the split");

    auto subset = [&](const std::vector<std::size_t>& idx) {
        FeatureSet s;
        s.dim = train_set.dim;
        s.num_classes = attrs.num_seen;  // the validation-time class space
        s.features = Matrix(idx.size(), train_set.dim);
        s.labels.reserve(idx.size());
        for (std::size_t r = 0; r < idx.size(); ++r) {
            const auto src = train_set.feature(idx[r]);
            std::copy(src.begin(), src.end(), s.features.row(r).begin());
            s.labels.push_back(new_index[train_set.labels[idx[r]]]);
        }
        return s;
    };
    const FeatureSet inner_train = subset(inner_idx);
    const FeatureSet val_seen = subset(val_seen_idx);
    const FeatureSet val_unseen = subset(val_unseen_idx);

    CrossValResult result;
    result.metrics.reserve(grid.size());
    for (const TrainConfig& config : grid) {
        const TrainResult trained = train(config, val_attrs, inner_train);
        result.metrics.push_back(evaluate_gzsl(trained.params, val_seen, val_unseen));
    }
    for (std::size_t i = 1; i < result.metrics.size(); ++i)
        if (result.metrics[i].a_harmonic > result.metrics[result.best_index].a_harmonic) result.best_index = i;
    return result;
}

}  // namespace zsl

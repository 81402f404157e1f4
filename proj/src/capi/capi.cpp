#include "softzsl.h"

#include <cmath>
#include <cstring>
#include <memory>
#include <new>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "core/dataset.hpp"
#include "core/error.hpp"
#include "core/eval.hpp"
#include "core/gradcheck.hpp"
#include "core/model.hpp"
#include "core/softlabel.hpp"
#include "core/train.hpp"

// The C enums are the ABI; keep them locked to the core enums.
static_assert(static_cast<int>(zsl::Activation::tanh) == ZS_ACTIVATION_TANH);
static_assert(static_cast<int>(zsl::Activation::sigmoid) == ZS_ACTIVATION_SIGMOID);
static_assert(static_cast<int>(zsl::Activation::hard_sigmoid) == ZS_ACTIVATION_HARD_SIGMOID);
static_assert(static_cast<int>(zsl::Activation::relu) == ZS_ACTIVATION_RELU);
static_assert(static_cast<int>(zsl::LabelMode::nu) == ZS_LABEL_NU);
static_assert(static_cast<int>(zsl::LabelMode::du) == ZS_LABEL_DU);

struct zs_attributes {
    zsl::AttributeMatrix m;
};
struct zs_features {
    zsl::FeatureSet s;
};
struct zs_model {
    zsl::ModelParams p;
};

namespace {

thread_local std::string g_last_error;

zs_status map_code(zsl::ErrorCode code) {
    switch (code) {
        case zsl::ErrorCode::invalid_argument: return ZS_ERROR_INVALID_ARGUMENT;
        case zsl::ErrorCode::dimension_mismatch: return ZS_ERROR_DIMENSION;
        case zsl::ErrorCode::parse: return ZS_ERROR_PARSE;
        case zsl::ErrorCode::io: return ZS_ERROR_IO;
        case zsl::ErrorCode::format: return ZS_ERROR_FORMAT;
        case zsl::ErrorCode::numeric: return ZS_ERROR_NUMERIC;
        case zsl::ErrorCode::internal: return ZS_ERROR_INTERNAL;
    }
    return ZS_ERROR_INTERNAL;
}

zs_status set_error(zs_status status, const char* message) {
    g_last_error = message;
    return status;
}

// Runs the body with C++ exceptions translated to status codes at the ABI
// boundary; nothing may throw across it.
template <typename F>
zs_status guard(F&& body) {
    try {
        body();
        return ZS_OK;
    } catch (const zsl::Error& e) {
        g_last_error = e.what();
        return map_code(e.code());
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return ZS_ERROR_INTERNAL;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return ZS_ERROR_INTERNAL;
    }
}

void require(bool ok, const char* message) {
    if (!ok) zsl::fail(zsl::ErrorCode::invalid_argument, message);
}

zsl::Activation to_core(zs_activation a) {
    require(a >= ZS_ACTIVATION_TANH && a <= ZS_ACTIVATION_RELU, "invalid activation value");
    return static_cast<zsl::Activation>(a);
}

zsl::LabelMode to_core(zs_label_mode m) {
    require(m == ZS_LABEL_NU || m == ZS_LABEL_DU, "invalid label mode value");
    return static_cast<zsl::LabelMode>(m);
}

zsl::TrainConfig to_core(const zs_train_config& c) {
    zsl::TrainConfig out;
    out.hidden_size = c.hidden_size;
    out.activation = to_core(c.activation);
    out.mode = to_core(c.mode);
    out.q = c.q;
    out.tau = c.tau;
    out.learning_rate = c.learning_rate;
    out.epochs = c.epochs;
    out.batch_size = c.batch_size;
    out.lambda_l2 = c.lambda_l2;
    out.gamma_l1 = c.gamma_l1;
    out.seed = c.seed;
    out.standardize = c.standardize != 0;
    return out;
}

zs_gzsl_metrics to_c(const zsl::GzslMetrics& m) { return {m.a_seen, m.a_unseen, m.a_harmonic}; }

}  // namespace

extern "C" {

const char* zs_version(void) { return "1.0.0"; }

const char* zs_status_name(zs_status status) {
    switch (status) {
        case ZS_OK: return "ZS_OK";
        case ZS_ERROR_INVALID_ARGUMENT: return "ZS_ERROR_INVALID_ARGUMENT";
        case ZS_ERROR_DIMENSION: return "ZS_ERROR_DIMENSION";
        case ZS_ERROR_PARSE: return "ZS_ERROR_PARSE";
        case ZS_ERROR_IO: return "ZS_ERROR_IO";
        case ZS_ERROR_FORMAT: return "ZS_ERROR_FORMAT";
        case ZS_ERROR_NUMERIC: return "ZS_ERROR_NUMERIC";
        case ZS_ERROR_INTERNAL: return "ZS_ERROR_INTERNAL";
    }
    return "ZS_ERROR_UNKNOWN";
}

const char* zs_last_error(void) { return g_last_error.c_str(); }

zs_status zs_attributes_load(const char* path, zs_attributes** out) {
    if (path == nullptr || out == nullptr) return set_error(ZS_ERROR_INVALID_ARGUMENT, "null argument");
    return guard([&] {
        auto handle = std::make_unique<zs_attributes>();
        handle->m = zsl::load_attributes(path);
        *out = handle.release();
    });
}

zs_status zs_attributes_save(const zs_attributes* attrs, const char* path) {
    if (attrs == nullptr || path == nullptr) return set_error(ZS_ERROR_INVALID_ARGUMENT, "null argument");
    return guard([&] { zsl::save_attributes(attrs->m, path); });
}

zs_status zs_attributes_create(uint32_t dim_a, uint32_t num_seen, uint32_t num_unseen, const double* vectors,
                               const char* const* names, zs_attributes** out) {
    if (vectors == nullptr || out == nullptr) return set_error(ZS_ERROR_INVALID_ARGUMENT, "null argument");
    return guard([&] {
        require(dim_a > 0, "dim_a must be >= 1");
        require(num_seen > 0 && num_unseen > 0, "need at least one seen and one unseen class");
        const std::size_t num_classes = static_cast<std::size_t>(num_seen) + num_unseen;
        zsl::AttributeMatrix m;
        m.dim_a = dim_a;
        m.num_seen = num_seen;
        m.num_unseen = num_unseen;
        m.vectors = zsl::Matrix(num_classes, dim_a);
        for (std::size_t i = 0; i < num_classes * dim_a; ++i) {
            require(std::isfinite(vectors[i]), "attribute values must be finite");
            m.vectors.data()[i] = vectors[i];
        }
        std::unordered_set<std::string> unique;
        for (std::size_t k = 0; k < num_classes; ++k) {
            std::string name = names != nullptr
                                   ? std::string(names[k] != nullptr ? names[k] : "")
                                   : (k < num_seen ? "seen_" + std::to_string(k)
                                                   : "unseen_" + std::to_string(k - num_seen));
            require(!name.empty(), "class names must be non-empty");
            require(unique.insert(name).second, "class names must be distinct");
            m.class_names.push_back(std::move(name));
            m.source_rows.push_back(k);
        }
        auto handle = std::make_unique<zs_attributes>();
        handle->m = std::move(m);
        *out = handle.release();
    });
}

zs_status zs_attributes_info(const zs_attributes* attrs, uint32_t* dim_a, uint32_t* num_seen, uint32_t* num_unseen) {
    if (attrs == nullptr) return set_error(ZS_ERROR_INVALID_ARGUMENT, "null argument");
    if (dim_a != nullptr) *dim_a = static_cast<uint32_t>(attrs->m.dim_a);
    if (num_seen != nullptr) *num_seen = static_cast<uint32_t>(attrs->m.num_seen);
    if (num_unseen != nullptr) *num_unseen = static_cast<uint32_t>(attrs->m.num_unseen);
    return ZS_OK;
}

const char* zs_attributes_class_name(const zs_attributes* attrs, uint32_t klass) {
    if (attrs == nullptr || klass >= attrs->m.num_classes()) return nullptr;
    return attrs->m.class_names[klass].c_str();
}

void zs_attributes_free(zs_attributes* attrs) { delete attrs; }

zs_status zs_features_load(const char* path, zs_features** out) {
    if (path == nullptr || out == nullptr) return set_error(ZS_ERROR_INVALID_ARGUMENT, "null argument");
    return guard([&] {
        auto handle = std::make_unique<zs_features>();
        handle->s = zsl::load_features(path);
        *out = handle.release();
    });
}

zs_status zs_features_save(const zs_features* features, const char* path) {
    if (features == nullptr || path == nullptr) return set_error(ZS_ERROR_INVALID_ARGUMENT, "null argument");
    return guard([&] { zsl::save_features(features->s, path); });
}

zs_status zs_features_create(uint32_t dim, uint32_t num_classes, uint32_t count, const double* features,
                             const uint32_t* labels, zs_features** out) {
    if (out == nullptr || (count > 0 && (features == nullptr || labels == nullptr)))
        return set_error(ZS_ERROR_INVALID_ARGUMENT, "null argument");
    return guard([&] {
        require(dim > 0 || count == 0, "dim must be >= 1 for a non-empty set");
        zsl::FeatureSet s;
        s.dim = dim;
        s.num_classes = num_classes;
        s.features = zsl::Matrix(count, dim);
        for (std::size_t i = 0; i < static_cast<std::size_t>(count) * dim; ++i) {
            require(std::isfinite(features[i]), "feature values must be finite");
            // Quantize to the f32 precision of the file format.
            s.features.data()[i] = static_cast<double>(static_cast<float>(features[i]));
        }
        s.labels.assign(labels, labels + count);
        for (uint32_t label : s.labels) require(label < num_classes, "label >= num_classes");
        auto handle = std::make_unique<zs_features>();
        handle->s = std::move(s);
        *out = handle.release();
    });
}

zs_status zs_features_info(const zs_features* features, uint32_t* count, uint32_t* dim, uint32_t* num_classes) {
    if (features == nullptr) return set_error(ZS_ERROR_INVALID_ARGUMENT, "null argument");
    if (count != nullptr) *count = static_cast<uint32_t>(features->s.size());
    if (dim != nullptr) *dim = static_cast<uint32_t>(features->s.dim);
    if (num_classes != nullptr) *num_classes = static_cast<uint32_t>(features->s.num_classes);
    return ZS_OK;
}

void zs_features_free(zs_features* features) { delete features; }

void zs_synth_spec_default(zs_synth_spec* spec) {
    if (spec == nullptr) return;
    const zsl::SynthSpec d;
    spec->dim_a = static_cast<uint32_t>(d.dim_a);
    spec->dim_d = static_cast<uint32_t>(d.dim_d);
    spec->num_seen = static_cast<uint32_t>(d.num_seen);
    spec->num_unseen = static_cast<uint32_t>(d.num_unseen);
    spec->train_per_class = static_cast<uint32_t>(d.train_per_class);
    spec->test_per_class = static_cast<uint32_t>(d.test_per_class);
    spec->noise_sigma = d.noise_sigma;
    spec->seed = d.seed;
}

zs_status zs_synth_generate(const zs_synth_spec* spec, zs_attributes** attrs, zs_features** train,
                            zs_features** test_seen, zs_features** test_unseen) {
    if (spec == nullptr) return set_error(ZS_ERROR_INVALID_ARGUMENT, "null argument");
    return guard([&] {
        zsl::SynthSpec s;
        s.dim_a = spec->dim_a;
        s.dim_d = spec->dim_d;
        s.num_seen = spec->num_seen;
        s.num_unseen = spec->num_unseen;
        s.train_per_class = spec->train_per_class;
        s.test_per_class = spec->test_per_class;
        s.noise_sigma = spec->noise_sigma;
        s.seed = spec->seed;
        zsl::SynthData data = zsl::synth_generate(s);
        if (attrs != nullptr) {
            auto h = std::make_unique<zs_attributes>();
            h->m = std::move(data.attributes);
            *attrs = h.release();
        }
        if (train != nullptr) {
            auto h = std::make_unique<zs_features>();
            h->s = std::move(data.train);
            *train = h.release();
        }
        if (test_seen != nullptr) {
            auto h = std::make_unique<zs_features>();
            h->s = std::move(data.test_seen);
            *test_seen = h.release();
        }
        if (test_unseen != nullptr) {
            auto h = std::make_unique<zs_features>();
            h->s = std::move(data.test_unseen);
            *test_unseen = h.release();
        }
    });
}

void zs_train_config_default(zs_train_config* config) {
    if (config == nullptr) return;
    const zsl::TrainConfig d;
    config->hidden_size = static_cast<uint32_t>(d.hidden_size);
    config->activation = static_cast<zs_activation>(d.activation);
    config->mode = static_cast<zs_label_mode>(d.mode);
    config->q = d.q;
    config->tau = d.tau;
    config->learning_rate = d.learning_rate;
    config->epochs = static_cast<uint32_t>(d.epochs);
    config->batch_size = static_cast<uint32_t>(d.batch_size);
    config->lambda_l2 = d.lambda_l2;
    config->gamma_l1 = d.gamma_l1;
    config->seed = d.seed;
    config->standardize = d.standardize ? 1 : 0;
}

zs_status zs_train(const zs_train_config* config, const zs_attributes* attrs, const zs_features* train,
                   double* epoch_losses, zs_model** out) {
    if (config == nullptr || attrs == nullptr || train == nullptr || out == nullptr)
        return set_error(ZS_ERROR_INVALID_ARGUMENT, "null argument");
    return guard([&] {
        zsl::TrainResult result = zsl::train(to_core(*config), attrs->m, train->s);
        if (epoch_losses != nullptr)
            for (std::size_t e = 0; e < result.history.epochs.size(); ++e)
                epoch_losses[e] = result.history.epochs[e].loss;
        auto handle = std::make_unique<zs_model>();
        handle->p = std::move(result.params);
        *out = handle.release();
    });
}

zs_status zs_model_save(const zs_model* model, const char* path) {
    if (model == nullptr || path == nullptr) return set_error(ZS_ERROR_INVALID_ARGUMENT, "null argument");
    return guard([&] { zsl::save_model(model->p, path); });
}

zs_status zs_model_load(const char* path, zs_model** out) {
    if (path == nullptr || out == nullptr) return set_error(ZS_ERROR_INVALID_ARGUMENT, "null argument");
    return guard([&] {
        auto handle = std::make_unique<zs_model>();
        handle->p = zsl::load_model(path);
        *out = handle.release();
    });
}

zs_status zs_model_get_info(const zs_model* model, zs_model_info* info) {
    if (model == nullptr || info == nullptr) return set_error(ZS_ERROR_INVALID_ARGUMENT, "null argument");
    info->input_dim = static_cast<uint32_t>(model->p.input_dim());
    info->hidden_size = static_cast<uint32_t>(model->p.hidden_size());
    info->dim_a = static_cast<uint32_t>(model->p.attrs.dim_a);
    info->num_seen = static_cast<uint32_t>(model->p.attrs.num_seen);
    info->num_unseen = static_cast<uint32_t>(model->p.attrs.num_unseen);
    info->activation = static_cast<zs_activation>(model->p.activation);
    return ZS_OK;
}

zs_status zs_predict_proba(const zs_model* model, const double* feature, uint32_t dim, double* proba) {
    if (model == nullptr || feature == nullptr || proba == nullptr)
        return set_error(ZS_ERROR_INVALID_ARGUMENT, "null argument");
    return guard([&] {
        const zsl::Vector p =
            zsl::predict_proba(std::span<const double>(feature, dim), model->p);
        std::memcpy(proba, p.data(), p.size() * sizeof(double));
    });
}

void zs_model_free(zs_model* model) { delete model; }

zs_status zs_evaluate_gzsl(const zs_model* model, const zs_features* test_seen, const zs_features* test_unseen,
                           zs_gzsl_metrics* metrics) {
    if (model == nullptr || test_seen == nullptr || test_unseen == nullptr || metrics == nullptr)
        return set_error(ZS_ERROR_INVALID_ARGUMENT, "null argument");
    return guard([&] { *metrics = to_c(zsl::evaluate_gzsl(model->p, test_seen->s, test_unseen->s)); });
}

zs_status zs_evaluate_zsl(const zs_model* model, const zs_features* test_unseen, double* accuracy) {
    if (model == nullptr || test_unseen == nullptr || accuracy == nullptr)
        return set_error(ZS_ERROR_INVALID_ARGUMENT, "null argument");
    return guard([&] { *accuracy = zsl::evaluate_zsl(model->p, test_unseen->s); });
}

double zs_harmonic_mean(double a_seen, double a_unseen) { return zsl::harmonic_mean(a_seen, a_unseen); }

zs_status zs_softlabel_table(const zs_attributes* attrs, zs_label_mode mode, double q, double tau, double* table) {
    if (attrs == nullptr || table == nullptr) return set_error(ZS_ERROR_INVALID_ARGUMENT, "null argument");
    return guard([&] {
        const zsl::SoftLabelTable t = zsl::build_table(attrs->m, {to_core(mode), q, tau});
        std::memcpy(table, t.rows.data().data(), t.rows.data().size() * sizeof(double));
    });
}

zs_status zs_sweep(const zs_train_config* base, zs_sweep_param param, const double* values, uint32_t num_values,
                   uint32_t repeats, const zs_attributes* attrs, const zs_features* train,
                   const zs_features* test_seen, const zs_features* test_unseen, zs_sweep_row* rows,
                   uint32_t* best_index) {
    if (base == nullptr || values == nullptr || attrs == nullptr || train == nullptr || test_seen == nullptr ||
        test_unseen == nullptr || rows == nullptr)
        return set_error(ZS_ERROR_INVALID_ARGUMENT, "null argument");
    return guard([&] {
        require(param == ZS_SWEEP_Q || param == ZS_SWEEP_TAU, "invalid sweep parameter");
        const zsl::SweepResult result =
            zsl::sweep(to_core(*base), static_cast<zsl::SweepParam>(param),
                       std::span<const double>(values, num_values), attrs->m, train->s, test_seen->s,
                       test_unseen->s, repeats);
        for (std::size_t i = 0; i < result.rows.size(); ++i)
            rows[i] = {result.rows[i].value, to_c(result.rows[i].metrics)};
        if (best_index != nullptr) *best_index = static_cast<uint32_t>(result.best_index);
    });
}

zs_status zs_cross_validate(const zs_train_config* grid, uint32_t grid_len, const zs_attributes* attrs,
                            const zs_features* train, const zs_val_split* split, zs_gzsl_metrics* metrics,
                            uint32_t* best_index) {
    if (grid == nullptr || attrs == nullptr || train == nullptr || split == nullptr || best_index == nullptr)
        return set_error(ZS_ERROR_INVALID_ARGUMENT, "null argument");
    return guard([&] {
        std::vector<zsl::TrainConfig> configs;
        configs.reserve(grid_len);
        for (uint32_t i = 0; i < grid_len; ++i) configs.push_back(to_core(grid[i]));
        zsl::ValSplit s;
        s.pseudo_unseen = split->pseudo_unseen;
        s.holdout_fraction = split->holdout_fraction;
        s.seed = split->seed;
        const zsl::CrossValResult result = zsl::cross_validate(configs, attrs->m, train->s, s);
        if (metrics != nullptr)
            for (std::size_t i = 0; i < result.metrics.size(); ++i) metrics[i] = to_c(result.metrics[i]);
        *best_index = static_cast<uint32_t>(result.best_index);
    });
}

zs_status zs_gradcheck(uint64_t seed, uint32_t instances, int inject_fault, double* max_rel_error) {
    if (max_rel_error == nullptr) return set_error(ZS_ERROR_INVALID_ARGUMENT, "null argument");
    return guard([&] {
        const zsl::GradCheckReport report = zsl::gradcheck(seed, instances, inject_fault != 0);
        *max_rel_error = report.max_rel_error;
    });
}

}  // extern "C"

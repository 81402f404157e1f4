#ifndef SOFTZSL_H
#define SOFTZSL_H

/*
 * softzsl — generalized zero-shot learning with similarity-based soft labels.
 *
 * C API over the C++ core. All functions returning zs_status report failures
 * through the return code; zs_last_error() gives a human-readable message for
 * the most recent failure on the calling thread. Objects returned through
 * out-parameters are owned by the caller and released with the matching
 * *_free function. Out-parameters are untouched on failure.
 *
 * Class-index contract (everywhere): seen classes are 0..num_seen-1, unseen
 * classes num_seen..num_classes-1.
 */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum zs_status {
    ZS_OK = 0,
    ZS_ERROR_INVALID_ARGUMENT = 1,
    ZS_ERROR_DIMENSION = 2,
    ZS_ERROR_PARSE = 3,
    ZS_ERROR_IO = 4,
    ZS_ERROR_FORMAT = 5,
    ZS_ERROR_NUMERIC = 6,
    ZS_ERROR_INTERNAL = 7
} zs_status;

typedef enum zs_activation {
    ZS_ACTIVATION_TANH = 0,
    ZS_ACTIVATION_SIGMOID = 1,
    ZS_ACTIVATION_HARD_SIGMOID = 2,
    ZS_ACTIVATION_RELU = 3
} zs_activation;

typedef enum zs_label_mode {
    ZS_LABEL_NU = 0, /* all unseen mass q on the nearest unseen class */
    ZS_LABEL_DU = 1  /* q spread by a temperature softmax of similarities */
} zs_label_mode;

typedef enum zs_sweep_param {
    ZS_SWEEP_Q = 0,
    ZS_SWEEP_TAU = 1
} zs_sweep_param;

/* Opaque handles. */
typedef struct zs_attributes zs_attributes;
typedef struct zs_features zs_features;
typedef struct zs_model zs_model;

const char* zs_version(void);

/* Stable name of a status code, e.g. "ZS_ERROR_PARSE". */
const char* zs_status_name(zs_status status);

/* Message for the most recent failure on this thread; "" if none. The
 * returned pointer stays valid until the next failing call on the thread. */
const char* zs_last_error(void);

/* ---- attribute matrices ------------------------------------------------ */

/* Load from CSV (header `class,role,a0,...`; role is seen|unseen). Rows may
 * interleave roles; columns are reordered seen-first. */
zs_status zs_attributes_load(const char* path, zs_attributes** out);
zs_status zs_attributes_save(const zs_attributes* attrs, const char* path);

/* Build from memory: vectors is num_classes x dim_a row-major, one attribute
 * vector per class, seen classes first. names may be NULL for generated
 * names; otherwise it holds num_seen+num_unseen distinct strings. */
zs_status zs_attributes_create(uint32_t dim_a, uint32_t num_seen, uint32_t num_unseen, const double* vectors,
                               const char* const* names, zs_attributes** out);
zs_status zs_attributes_info(const zs_attributes* attrs, uint32_t* dim_a, uint32_t* num_seen, uint32_t* num_unseen);
/* NULL if klass is out of range. Valid until the handle is freed. */
const char* zs_attributes_class_name(const zs_attributes* attrs, uint32_t klass);
void zs_attributes_free(zs_attributes* attrs);

/* ---- feature sets ------------------------------------------------------ */

/* Binary format: magic "ZSFB", little-endian u32 version=1, n, dim,
 * num_classes, then n*dim f32 features row-major, then n u32 labels. */
zs_status zs_features_load(const char* path, zs_features** out);
zs_status zs_features_save(const zs_features* features, const char* path);

/* Build from memory: features is count x dim row-major (stored at f32
 * precision, matching the file format); labels are < num_classes. */
zs_status zs_features_create(uint32_t dim, uint32_t num_classes, uint32_t count, const double* features,
                             const uint32_t* labels, zs_features** out);
zs_status zs_features_info(const zs_features* features, uint32_t* count, uint32_t* dim, uint32_t* num_classes);
void zs_features_free(zs_features* features);

/* ---- synthetic benchmark ----------------------------------------------- */

typedef struct zs_synth_spec {
    uint32_t dim_a;
    uint32_t dim_d;
    uint32_t num_seen;
    uint32_t num_unseen;
    uint32_t train_per_class;
    uint32_t test_per_class;
    double noise_sigma;
    uint64_t seed;
} zs_synth_spec;

/* The default desk-scale benchmark: a=16, d=32, 12 seen + 4 unseen classes,
 * 60 train + 20 test samples per class, sigma=0.3, seed=7. */
void zs_synth_spec_default(zs_synth_spec* spec);

/* Binary class attributes, features = M·a_k + N(0, sigma²) with a random
 * d x a map M. Deterministic in spec->seed. Any out-pointer may be NULL if
 * that piece is not needed. */
zs_status zs_synth_generate(const zs_synth_spec* spec, zs_attributes** attrs, zs_features** train,
                            zs_features** test_seen, zs_features** test_unseen);

/* ---- training ---------------------------------------------------------- */

typedef struct zs_train_config {
    uint32_t hidden_size;
    zs_activation activation;
    zs_label_mode mode;
    double q;   /* total unseen label mass, [0,1] */
    double tau; /* soft-label temperature, > 0 (DU) */
    double learning_rate;
    uint32_t epochs;
    uint32_t batch_size;
    double lambda_l2;
    double gamma_l1;
    uint64_t seed;
    int standardize; /* nonzero: standardize features on train moments */
} zs_train_config;

void zs_train_config_default(zs_train_config* config);

/* Mini-batch SGD on the soft-label objective. train must carry seen-class
 * labels only. epoch_losses, if non-NULL, receives config->epochs mean epoch
 * losses. Deterministic given (config, inputs). */
zs_status zs_train(const zs_train_config* config, const zs_attributes* attrs, const zs_features* train,
                   double* epoch_losses, zs_model** out);

/* Checkpoint format: magic "ZSFM", little-endian u32 version=1, dims, u8
 * activation, then w1, b1, w2, b2 and the attribute matrix as f64. */
zs_status zs_model_save(const zs_model* model, const char* path);
zs_status zs_model_load(const char* path, zs_model** out);

typedef struct zs_model_info {
    uint32_t input_dim;
    uint32_t hidden_size;
    uint32_t dim_a;
    uint32_t num_seen;
    uint32_t num_unseen;
    zs_activation activation;
} zs_model_info;

zs_status zs_model_get_info(const zs_model* model, zs_model_info* info);

/* proba receives num_seen+num_unseen probabilities (softmax over the class
 * scores); dim must equal the model's input_dim. */
zs_status zs_predict_proba(const zs_model* model, const double* feature, uint32_t dim, double* proba);
void zs_model_free(zs_model* model);

/* ---- evaluation -------------------------------------------------------- */

typedef struct zs_gzsl_metrics {
    double a_seen;
    double a_unseen;
    double a_harmonic;
} zs_gzsl_metrics;

/* Per-class (macro) accuracies under the generalized protocol: argmax over
 * all classes. */
zs_status zs_evaluate_gzsl(const zs_model* model, const zs_features* test_seen, const zs_features* test_unseen,
                           zs_gzsl_metrics* metrics);

/* Classic protocol: argmax restricted to unseen classes. */
zs_status zs_evaluate_zsl(const zs_model* model, const zs_features* test_unseen, double* accuracy);

/* 2ab/(a+b); 0 when a+b = 0. */
double zs_harmonic_mean(double a_seen, double a_unseen);

/* ---- soft labels ------------------------------------------------------- */

/* Writes the full label table: num_seen rows of num_seen+num_unseen values,
 * row-major, into table (row s = label vector for seen class s). */
zs_status zs_softlabel_table(const zs_attributes* attrs, zs_label_mode mode, double q, double tau, double* table);

/* ---- sweeps and model selection ---------------------------------------- */

typedef struct zs_sweep_row {
    double value;
    zs_gzsl_metrics metrics;
} zs_sweep_row;

/* Retrains per grid value (q or tau per param), evaluating GZSL each time.
 * values are sorted ascending into rows (num_values entries). best_index, if
 * non-NULL, receives the argmax-a_harmonic row (earliest on ties). repeats
 * averages each point over that many trainings seeded seed, seed+1, ... */
zs_status zs_sweep(const zs_train_config* base, zs_sweep_param param, const double* values, uint32_t num_values,
                   uint32_t repeats, const zs_attributes* attrs, const zs_features* train,
                   const zs_features* test_seen, const zs_features* test_unseen, zs_sweep_row* rows,
                   uint32_t* best_index);

typedef struct zs_val_split {
    uint32_t pseudo_unseen;  /* seen classes held out as validation-unseen */
    double holdout_fraction; /* per-class share of remaining samples held out */
    uint64_t seed;
} zs_val_split;

/* Scores every config on a pseudo-unseen validation split carved out of the
 * training data (real unseen classes are never touched) and returns the
 * argmax-a_harmonic config index. metrics, if non-NULL, receives grid_len
 * validation metrics. */
zs_status zs_cross_validate(const zs_train_config* grid, uint32_t grid_len, const zs_attributes* attrs,
                            const zs_features* train, const zs_val_split* split, zs_gzsl_metrics* metrics,
                            uint32_t* best_index);

/* ---- verification ------------------------------------------------------ */

/* Compares analytic gradients against central finite differences on random
 * small instances; writes the max relative error. inject_fault nonzero adds
 * a deliberate error (negative control). */
zs_status zs_gradcheck(uint64_t seed, uint32_t instances, int inject_fault, double* max_rel_error);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* SOFTZSL_H */

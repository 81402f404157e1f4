#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "doctest.h"
#include "softzsl.h"
#include "testutil.hpp"

using testutil::TempDir;

namespace {

// Deterministic tiny benchmark shared by the training-path tests.
zs_synth_spec tiny_spec() {
    zs_synth_spec spec;
    zs_synth_spec_default(&spec);
    spec.dim_a = 8;
    spec.dim_d = 12;
    spec.num_seen = 6;
    spec.num_unseen = 3;
    spec.train_per_class = 30;
    spec.test_per_class = 10;
    spec.noise_sigma = 0.3;
    spec.seed = 5;
    return spec;
}

zs_train_config tiny_config() {
    zs_train_config c;
    zs_train_config_default(&c);
    c.hidden_size = 16;
    c.epochs = 6;
    c.batch_size = 32;
    c.learning_rate = 0.05;
    c.seed = 3;
    return c;
}

struct Bench {
    zs_attributes* attrs = nullptr;
    zs_features* train = nullptr;
    zs_features* test_seen = nullptr;
    zs_features* test_unseen = nullptr;

    Bench() {
        const zs_synth_spec spec = tiny_spec();
        REQUIRE(zs_synth_generate(&spec, &attrs, &train, &test_seen, &test_unseen) == ZS_OK);
    }
    ~Bench() {
        zs_features_free(test_unseen);
        zs_features_free(test_seen);
        zs_features_free(train);
        zs_attributes_free(attrs);
    }
    Bench(const Bench&) = delete;
    Bench& operator=(const Bench&) = delete;
};

}  // namespace

TEST_CASE("version and status names are stable strings") {
    CHECK(std::string(zs_version()) == "1.0.0");
    CHECK(std::string(zs_status_name(ZS_OK)) == "ZS_OK");
    CHECK(std::string(zs_status_name(ZS_ERROR_INVALID_ARGUMENT)) == "ZS_ERROR_INVALID_ARGUMENT");
    CHECK(std::string(zs_status_name(ZS_ERROR_DIMENSION)) == "ZS_ERROR_DIMENSION");
    CHECK(std::string(zs_status_name(ZS_ERROR_PARSE)) == "ZS_ERROR_PARSE");
    CHECK(std::string(zs_status_name(ZS_ERROR_IO)) == "ZS_ERROR_IO");
    CHECK(std::string(zs_status_name(ZS_ERROR_FORMAT)) == "ZS_ERROR_FORMAT");
    CHECK(std::string(zs_status_name(ZS_ERROR_NUMERIC)) == "ZS_ERROR_NUMERIC");
    CHECK(std::string(zs_status_name(ZS_ERROR_INTERNAL)) == "ZS_ERROR_INTERNAL");
    CHECK(std::string(zs_status_name(static_cast<zs_status>(99))) == "ZS_ERROR_UNKNOWN");
}

TEST_CASE("null arguments are rejected with a message") {
    zs_attributes* attrs = nullptr;
    CHECK(zs_attributes_load(nullptr, &attrs) == ZS_ERROR_INVALID_ARGUMENT);
    CHECK(std::string(zs_last_error()).empty() == false);
    CHECK(zs_attributes_load("whatever.csv", nullptr) == ZS_ERROR_INVALID_ARGUMENT);
    CHECK(attrs == nullptr);  // untouched on failure

    zs_features* feats = nullptr;
    CHECK(zs_features_load(nullptr, &feats) == ZS_ERROR_INVALID_ARGUMENT);
    zs_model* model = nullptr;
    CHECK(zs_model_load(nullptr, &model) == ZS_ERROR_INVALID_ARGUMENT);
    CHECK(zs_train(nullptr, nullptr, nullptr, nullptr, &model) == ZS_ERROR_INVALID_ARGUMENT);
    CHECK(zs_predict_proba(nullptr, nullptr, 0, nullptr) == ZS_ERROR_INVALID_ARGUMENT);
    double err = 0.0;
    CHECK(zs_gradcheck(1, 5, 0, nullptr) == ZS_ERROR_INVALID_ARGUMENT);
    CHECK(zs_gradcheck(1, 0, 0, &err) == ZS_ERROR_INVALID_ARGUMENT);
}

TEST_CASE("attribute handles build, describe and persist") {
    const double vectors[] = {1.0, 0.0, 0.5, 1.0, 0.0, 0.25};  // 3 classes x dim 2
    const char* names[] = {"cat", "dog", "owl"};
    zs_attributes* attrs = nullptr;
    REQUIRE(zs_attributes_create(2, 2, 1, vectors, names, &attrs) == ZS_OK);

    uint32_t dim_a = 0, num_seen = 0, num_unseen = 0;
    REQUIRE(zs_attributes_info(attrs, &dim_a, &num_seen, &num_unseen) == ZS_OK);
    CHECK(dim_a == 2);
    CHECK(num_seen == 2);
    CHECK(num_unseen == 1);
    CHECK(std::string(zs_attributes_class_name(attrs, 0)) == "cat");
    CHECK(std::string(zs_attributes_class_name(attrs, 2)) == "owl");
    CHECK(zs_attributes_class_name(attrs, 3) == nullptr);

    TempDir dir;
    const std::string path = dir.file("attrs.csv");
    REQUIRE(zs_attributes_save(attrs, path.c_str()) == ZS_OK);
    zs_attributes* back = nullptr;
    REQUIRE(zs_attributes_load(path.c_str(), &back) == ZS_OK);
    uint32_t dim_b = 0;
    REQUIRE(zs_attributes_info(back, &dim_b, nullptr, nullptr) == ZS_OK);
    CHECK(dim_b == 2);
    CHECK(std::string(zs_attributes_class_name(back, 1)) == "dog");
    zs_attributes_free(back);
    zs_attributes_free(attrs);
}

TEST_CASE("attribute creation validates names and defaults them") {
    const double vectors[] = {1.0, 0.0, 0.5, 1.0};
    zs_attributes* attrs = nullptr;
    REQUIRE(zs_attributes_create(2, 1, 1, vectors, nullptr, &attrs) == ZS_OK);
    CHECK(std::string(zs_attributes_class_name(attrs, 0)) == "seen_0");
    CHECK(std::string(zs_attributes_class_name(attrs, 1)) == "unseen_0");
    zs_attributes_free(attrs);

    const char* dup_names[] = {"same", "same"};
    CHECK(zs_attributes_create(2, 1, 1, vectors, dup_names, &attrs) == ZS_ERROR_INVALID_ARGUMENT);
    CHECK(std::string(zs_last_error()).find("distinct") != std::string::npos);
    CHECK(zs_attributes_create(2, 0, 2, vectors, nullptr, &attrs) == ZS_ERROR_INVALID_ARGUMENT);
}

TEST_CASE("feature handles quantize to f32 and persist byte-exactly") {
    const double features[] = {0.1, -2.5, 1e-9, 42.0};  // 2 samples x dim 2
    const uint32_t labels[] = {0, 2};
    zs_features* feats = nullptr;
    REQUIRE(zs_features_create(2, 3, 2, features, labels, &feats) == ZS_OK);

    uint32_t count = 0, dim = 0, num_classes = 0;
    REQUIRE(zs_features_info(feats, &count, &dim, &num_classes) == ZS_OK);
    CHECK(count == 2);
    CHECK(dim == 2);
    CHECK(num_classes == 3);

    TempDir dir;
    const std::string path = dir.file("feats.zsfb");
    REQUIRE(zs_features_save(feats, path.c_str()) == ZS_OK);
    zs_features* back = nullptr;
    REQUIRE(zs_features_load(path.c_str(), &back) == ZS_OK);
    const std::string again = dir.file("again.zsfb");
    REQUIRE(zs_features_save(back, again.c_str()) == ZS_OK);
    CHECK(testutil::slurp(again) == testutil::slurp(path));
    zs_features_free(back);
    zs_features_free(feats);

    // labels must respect the declared class count
    const uint32_t bad_labels[] = {0, 3};
    CHECK(zs_features_create(2, 3, 2, features, bad_labels, &feats) == ZS_ERROR_INVALID_ARGUMENT);
}

TEST_CASE("synthetic generation honors the spec and nullable outputs") {
    const zs_synth_spec spec = tiny_spec();
    zs_attributes* attrs = nullptr;
    zs_features* train = nullptr;
    REQUIRE(zs_synth_generate(&spec, &attrs, &train, nullptr, nullptr) == ZS_OK);

    uint32_t dim_a = 0, num_seen = 0, num_unseen = 0;
    REQUIRE(zs_attributes_info(attrs, &dim_a, &num_seen, &num_unseen) == ZS_OK);
    CHECK(dim_a == 8);
    CHECK(num_seen == 6);
    CHECK(num_unseen == 3);

    uint32_t count = 0, dim = 0, num_classes = 0;
    REQUIRE(zs_features_info(train, &count, &dim, &num_classes) == ZS_OK);
    CHECK(count == 6 * 30);
    CHECK(dim == 12);
    CHECK(num_classes == 9);

    zs_features_free(train);
    zs_attributes_free(attrs);

    zs_synth_spec bad = spec;
    bad.num_unseen = 0;
    CHECK(zs_synth_generate(&bad, &attrs, nullptr, nullptr, nullptr) == ZS_ERROR_INVALID_ARGUMENT);
}

TEST_CASE("default configs mirror the documented values") {
    zs_train_config c;
    zs_train_config_default(&c);
    CHECK(c.hidden_size == 64);
    CHECK(c.activation == ZS_ACTIVATION_SIGMOID);
    CHECK(c.mode == ZS_LABEL_DU);
    CHECK(c.q == 0.3);
    CHECK(c.tau == 0.5);
    CHECK(c.learning_rate == 0.015);
    CHECK(c.epochs == 100);
    CHECK(c.batch_size == 64);
    CHECK(c.lambda_l2 == 0.0);
    CHECK(c.gamma_l1 == 0.0);
    CHECK(c.seed == 1);
    CHECK(c.standardize != 0);

    zs_synth_spec s;
    zs_synth_spec_default(&s);
    CHECK(s.dim_a == 16);
    CHECK(s.dim_d == 32);
    CHECK(s.num_seen == 12);
    CHECK(s.num_unseen == 4);
    CHECK(s.train_per_class == 60);
    CHECK(s.test_per_class == 20);
    CHECK(s.noise_sigma == 0.3);
    CHECK(s.seed == 7);
}

TEST_CASE("training produces a working measurable model") {
    Bench bench;
    const zs_train_config config = tiny_config();
    std::vector<double> losses(config.epochs, -1.0);
    zs_model* model = nullptr;
    REQUIRE(zs_train(&config, bench.attrs, bench.train, losses.data(), &model) == ZS_OK);

    for (double l : losses) CHECK(std::isfinite(l));
    CHECK(losses.back() < losses.front());

    zs_model_info info;
    REQUIRE(zs_model_get_info(model, &info) == ZS_OK);
    CHECK(info.input_dim == 12);
    CHECK(info.hidden_size == 16);
    CHECK(info.dim_a == 8);
    CHECK(info.num_seen == 6);
    CHECK(info.num_unseen == 3);
    CHECK(info.activation == ZS_ACTIVATION_SIGMOID);

    const std::vector<double> probe(12, 0.5);
    std::vector<double> proba(9, 0.0);
    REQUIRE(zs_predict_proba(model, probe.data(), 12, proba.data()) == ZS_OK);
    double total = 0.0;
    for (double p : proba) {
        CHECK(p >= 0.0);
        total += p;
    }
    CHECK(std::fabs(total - 1.0) < 1e-12);

    // wrong feature dimension is a dimension error
    CHECK(zs_predict_proba(model, probe.data(), 11, proba.data()) == ZS_ERROR_DIMENSION);

    zs_gzsl_metrics m;
    REQUIRE(zs_evaluate_gzsl(model, bench.test_seen, bench.test_unseen, &m) == ZS_OK);
    CHECK(m.a_seen >= 0.0);
    CHECK(m.a_seen <= 1.0);
    CHECK(m.a_unseen >= 0.0);
    CHECK(m.a_unseen <= 1.0);
    CHECK(m.a_harmonic == zs_harmonic_mean(m.a_seen, m.a_unseen));

    double zsl = -1.0;
    REQUIRE(zs_evaluate_zsl(model, bench.test_unseen, &zsl) == ZS_OK);
    CHECK(zsl >= m.a_unseen);
    CHECK(zsl <= 1.0);

    zs_model_free(model);
}

TEST_CASE("training rejects unseen labels and bad configs through status codes") {
    Bench bench;
    zs_train_config config = tiny_config();
    zs_model* model = nullptr;

    config.tau = 0.0;
    CHECK(zs_train(&config, bench.attrs, bench.train, nullptr, &model) == ZS_ERROR_INVALID_ARGUMENT);
    CHECK(std::string(zs_last_error()).find("tau") != std::string::npos);

    config = tiny_config();
    CHECK(zs_train(&config, bench.attrs, bench.test_unseen, nullptr, &model) ==
          ZS_ERROR_INVALID_ARGUMENT);  // unseen-class labels in the training set
    CHECK(model == nullptr);
}

TEST_CASE("checkpoints round-trip through the C API with identical predictions") {
    Bench bench;
    const zs_train_config config = tiny_config();
    zs_model* model = nullptr;
    REQUIRE(zs_train(&config, bench.attrs, bench.train, nullptr, &model) == ZS_OK);

    TempDir dir;
    const std::string path = dir.file("model.zsfm");
    REQUIRE(zs_model_save(model, path.c_str()) == ZS_OK);
    zs_model* back = nullptr;
    REQUIRE(zs_model_load(path.c_str(), &back) == ZS_OK);

    std::vector<double> probe(12);
    std::vector<double> pa(9), pb(9);
    for (int trial = 0; trial < 100; ++trial) {
        for (std::size_t j = 0; j < probe.size(); ++j)
            probe[j] = std::sin(0.1 * static_cast<double>(trial * 12 + j));
        REQUIRE(zs_predict_proba(model, probe.data(), 12, pa.data()) == ZS_OK);
        REQUIRE(zs_predict_proba(back, probe.data(), 12, pb.data()) == ZS_OK);
        for (std::size_t k = 0; k < 9; ++k) CHECK(pa[k] == pb[k]);
    }

    zs_model_free(back);
    zs_model_free(model);
}

TEST_CASE("file errors map onto distinct status codes") {
    TempDir dir;
    zs_attributes* attrs = nullptr;
    CHECK(zs_attributes_load(dir.file("missing.csv").c_str(), &attrs) == ZS_ERROR_IO);

    const std::string bad_csv = dir.file("bad.csv");
    testutil::write_file(bad_csv, "class,role,a0\ncat,seen,not_a_number\n");
    CHECK(zs_attributes_load(bad_csv.c_str(), &attrs) == ZS_ERROR_PARSE);
    CHECK(std::string(zs_last_error()).find("line 2") != std::string::npos);

    zs_features* feats = nullptr;
    const std::string bad_bin = dir.file("bad.zsfb");
    testutil::write_file(bad_bin, "NOPE................");
    CHECK(zs_features_load(bad_bin.c_str(), &feats) == ZS_ERROR_FORMAT);

    zs_model* model = nullptr;
    const std::string bad_model = dir.file("bad.zsfm");
    testutil::write_file(bad_model, "ZSFM\x01");
    CHECK(zs_model_load(bad_model.c_str(), &model) == ZS_ERROR_FORMAT);
    CHECK(zs_model_load(dir.file("missing.zsfm").c_str(), &model) == ZS_ERROR_IO);
}

TEST_CASE("soft label tables expose the mass split") {
    const double vectors[] = {1.0, 0.0, 0.0, 1.0, 1.0, 1.0, 0.0, 1.0};  // 4 classes x dim 2
    zs_attributes* attrs = nullptr;
    REQUIRE(zs_attributes_create(2, 2, 2, vectors, nullptr, &attrs) == ZS_OK);

    std::vector<double> table(2 * 4, -1.0);
    REQUIRE(zs_softlabel_table(attrs, ZS_LABEL_DU, 0.4, 0.5, table.data()) == ZS_OK);
    for (std::size_t s = 0; s < 2; ++s) {
        double sum = 0.0, unseen = 0.0;
        for (std::size_t k = 0; k < 4; ++k) sum += table[s * 4 + k];
        for (std::size_t k = 2; k < 4; ++k) unseen += table[s * 4 + k];
        CHECK(std::fabs(sum - 1.0) < 1e-12);
        CHECK(std::fabs(unseen - 0.4) < 1e-12);
        CHECK(table[s * 4 + (1 - s)] == 0.0);  // the other seen class gets nothing
    }

    // NU puts everything on one unseen class
    REQUIRE(zs_softlabel_table(attrs, ZS_LABEL_NU, 0.4, 0.5, table.data()) == ZS_OK);
    // seen 0 = (1,0): sims to unseen (1,1) and (0,1) are 1 and 0
    CHECK(table[0 * 4 + 2] == 0.4);
    CHECK(table[0 * 4 + 3] == 0.0);

    CHECK(zs_softlabel_table(attrs, ZS_LABEL_DU, 1.5, 0.5, table.data()) == ZS_ERROR_INVALID_ARGUMENT);
    zs_attributes_free(attrs);
}

TEST_CASE("sweeps run end to end through the C API") {
    Bench bench;
    zs_train_config base = tiny_config();
    base.epochs = 4;
    const double values[] = {0.4, 0.1, 0.25};
    std::vector<zs_sweep_row> rows(3);
    uint32_t best = 99;
    REQUIRE(zs_sweep(&base, ZS_SWEEP_Q, values, 3, 1, bench.attrs, bench.train, bench.test_seen,
                     bench.test_unseen, rows.data(), &best) == ZS_OK);
    CHECK(rows[0].value == 0.1);
    CHECK(rows[1].value == 0.25);
    CHECK(rows[2].value == 0.4);
    CHECK(best < 3);

    // a row reproduces a manual train + evaluate with the same settings
    zs_train_config manual = base;
    manual.q = rows[1].value;
    zs_model* model = nullptr;
    REQUIRE(zs_train(&manual, bench.attrs, bench.train, nullptr, &model) == ZS_OK);
    zs_gzsl_metrics m;
    REQUIRE(zs_evaluate_gzsl(model, bench.test_seen, bench.test_unseen, &m) == ZS_OK);
    CHECK(rows[1].metrics.a_seen == m.a_seen);
    CHECK(rows[1].metrics.a_unseen == m.a_unseen);
    CHECK(rows[1].metrics.a_harmonic == m.a_harmonic);
    zs_model_free(model);

    const double bad_values[] = {0.5, 1.5};
    CHECK(zs_sweep(&base, ZS_SWEEP_Q, bad_values, 2, 1, bench.attrs, bench.train, bench.test_seen,
                   bench.test_unseen, rows.data(), nullptr) == ZS_ERROR_INVALID_ARGUMENT);
}

TEST_CASE("cross-validation selects a config through the C API") {
    Bench bench;
    zs_train_config a = tiny_config();
    a.epochs = 3;
    a.q = 0.0;
    zs_train_config b = a;
    b.q = 0.3;
    const zs_train_config grid[] = {a, b};
    const zs_val_split split{2, 0.25, 77};

    zs_gzsl_metrics metrics[2];
    uint32_t best = 99;
    REQUIRE(zs_cross_validate(grid, 2, bench.attrs, bench.train, &split, metrics, &best) == ZS_OK);
    CHECK(best < 2);
    for (const zs_gzsl_metrics& m : metrics) {
        CHECK(m.a_seen >= 0.0);
        CHECK(m.a_seen <= 1.0);
    }

    const zs_val_split bad{0, 0.25, 77};
    CHECK(zs_cross_validate(grid, 2, bench.attrs, bench.train, &bad, nullptr, &best) ==
          ZS_ERROR_INVALID_ARGUMENT);
}

TEST_CASE("gradient checking reports through the C API") {
    double err = -1.0;
    REQUIRE(zs_gradcheck(1, 10, 0, &err) == ZS_OK);
    CHECK(err <= 1e-4);
    CHECK(err > 0.0);

    double corrupted = -1.0;
    REQUIRE(zs_gradcheck(1, 10, 1, &corrupted) == ZS_OK);
    CHECK(corrupted > 1e-3);
}

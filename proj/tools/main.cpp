// softzsl command-line front end. Everything domain-level goes through the
// public C API (softzsl.h); this file only handles configuration, file
// plumbing and output formatting.
//
// Exit codes: 0 success, 1 check failure (gradcheck tolerance, numeric
// failure), 2 usage/config error, 3 I/O or file-format error.

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "softzsl.h"

namespace fs = std::filesystem;

namespace {

constexpr double kGradTolerance = 1e-4;

// Thrown to unwind to main with a specific exit code (message already
// printed).
struct ExitError {
    int code;
};

[[noreturn]] void usage_error(const std::string& message) {
    std::fprintf(stderr, "error: %s\n", message.c_str());
    throw ExitError{2};
}

int exit_code_for(zs_status status) {
    switch (status) {
        case ZS_OK: return 0;
        case ZS_ERROR_INVALID_ARGUMENT:
        case ZS_ERROR_DIMENSION: return 2;
        case ZS_ERROR_PARSE:
        case ZS_ERROR_IO:
        case ZS_ERROR_FORMAT: return 3;
        case ZS_ERROR_NUMERIC:
        case ZS_ERROR_INTERNAL: return 1;
    }
    return 1;
}

void check(zs_status status) {
    if (status == ZS_OK) return;
    std::fprintf(stderr, "error: %s (%s)\n", zs_last_error(), zs_status_name(status));
    throw ExitError{exit_code_for(status)};
}

// Owning wrappers for the C handles.
using AttrsPtr = std::unique_ptr<zs_attributes, decltype(&zs_attributes_free)>;
using FeaturesPtr = std::unique_ptr<zs_features, decltype(&zs_features_free)>;
using ModelPtr = std::unique_ptr<zs_model, decltype(&zs_model_free)>;

AttrsPtr load_attrs(const std::string& path) {
    zs_attributes* raw = nullptr;
    check(zs_attributes_load(path.c_str(), &raw));
    return {raw, &zs_attributes_free};
}

FeaturesPtr load_features(const std::string& path) {
    zs_features* raw = nullptr;
    check(zs_features_load(path.c_str(), &raw));
    return {raw, &zs_features_free};
}

// All tunables reachable from the config file and --key overrides.
struct Settings {
    zs_train_config train{};
    zs_synth_spec synth{};
    std::string attributes_path;  // empty: <out_dir>/attributes.csv
    std::string train_path;       // empty: <out_dir>/train.zsfb
    std::string test_seen_path;   // empty: <out_dir>/test_seen.zsfb
    std::string test_unseen_path; // empty: <out_dir>/test_unseen.zsfb
    std::string model_path;       // empty: <out_dir>/model.zsfm
    std::string out_dir = ".";

    Settings() {
        zs_train_config_default(&train);
        zs_synth_spec_default(&synth);
    }
};

std::string resolved(const Settings& s, const std::string& explicit_path, const char* default_name) {
    if (!explicit_path.empty()) return explicit_path;
    return (fs::path(s.out_dir) / default_name).string();
}

// ---- typed value parsing (shared by config file and command line) ----------

uint32_t parse_u32(const std::string& value) {
    uint32_t out = 0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc() || ptr != value.data() + value.size()) throw std::runtime_error("expected a non-negative integer");
    return out;
}

uint64_t parse_u64(const std::string& value) {
    uint64_t out = 0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc() || ptr != value.data() + value.size()) throw std::runtime_error("expected a non-negative integer");
    return out;
}

double parse_double(const std::string& value) {
    double out = 0.0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc() || ptr != value.data() + value.size() || !std::isfinite(out))
        throw std::runtime_error("expected a finite number");
    return out;
}

int parse_bool(const std::string& value) {
    if (value == "true" || value == "1") return 1;
    if (value == "false" || value == "0") return 0;
    throw std::runtime_error("expected true|false");
}

zs_activation parse_activation(const std::string& value) {
    if (value == "tanh") return ZS_ACTIVATION_TANH;
    if (value == "sigmoid") return ZS_ACTIVATION_SIGMOID;
    if (value == "hard-sigmoid" || value == "hard_sigmoid") return ZS_ACTIVATION_HARD_SIGMOID;
    if (value == "relu") return ZS_ACTIVATION_RELU;
    throw std::runtime_error("expected tanh|sigmoid|hard-sigmoid|relu");
}

zs_label_mode parse_mode(const std::string& value) {
    if (value == "NU" || value == "nu") return ZS_LABEL_NU;
    if (value == "DU" || value == "du") return ZS_LABEL_DU;
    throw std::runtime_error("expected NU|DU");
}

struct KeyDef {
    const char* name;
    const char* help;
    std::function<void(Settings&, const std::string&)> apply;
};

// The full key set; every subcommand accepts every key, so one config file
// can drive a whole synth/train/eval/sweep pipeline.
const std::vector<KeyDef>& key_defs() {
    static const std::vector<KeyDef> defs = {
        {"hidden_size", "hidden layer width (default 64)",
         [](Settings& s, const std::string& v) { s.train.hidden_size = parse_u32(v); }},
        {"activation", "tanh|sigmoid|hard-sigmoid|relu (default sigmoid)",
         [](Settings& s, const std::string& v) { s.train.activation = parse_activation(v); }},
        {"mode", "soft label mode, NU|DU (default DU)",
         [](Settings& s, const std::string& v) { s.train.mode = parse_mode(v); }},
        {"q", "total unseen label mass in [0,1] (default 0.3)",
         [](Settings& s, const std::string& v) { s.train.q = parse_double(v); }},
        {"tau", "soft label temperature > 0 (default 0.5)",
         [](Settings& s, const std::string& v) { s.train.tau = parse_double(v); }},
        {"learning_rate", "SGD step size (default 0.015)",
         [](Settings& s, const std::string& v) { s.train.learning_rate = parse_double(v); }},
        {"epochs", "training epochs (default 100)",
         [](Settings& s, const std::string& v) { s.train.epochs = parse_u32(v); }},
        {"batch_size", "mini-batch size (default 64)",
         [](Settings& s, const std::string& v) { s.train.batch_size = parse_u32(v); }},
        {"lambda_l2", "L2 penalty weight (default 0)",
         [](Settings& s, const std::string& v) { s.train.lambda_l2 = parse_double(v); }},
        {"gamma_l1", "L1 penalty weight (default 0)",
         [](Settings& s, const std::string& v) { s.train.gamma_l1 = parse_double(v); }},
        {"seed", "RNG seed for init/shuffle/gradcheck (default 1)",
         [](Settings& s, const std::string& v) { s.train.seed = parse_u64(v); }},
        {"standardize", "standardize features on training moments, true|false (default true)",
         [](Settings& s, const std::string& v) { s.train.standardize = parse_bool(v); }},
        {"attributes_path", "attribute CSV (default <out_dir>/attributes.csv)",
         [](Settings& s, const std::string& v) { s.attributes_path = v; }},
        {"train_path", "training features (default <out_dir>/train.zsfb)",
         [](Settings& s, const std::string& v) { s.train_path = v; }},
        {"test_seen_path", "seen-class test features (default <out_dir>/test_seen.zsfb)",
         [](Settings& s, const std::string& v) { s.test_seen_path = v; }},
        {"test_unseen_path", "unseen-class test features (default <out_dir>/test_unseen.zsfb)",
         [](Settings& s, const std::string& v) { s.test_unseen_path = v; }},
        {"model_path", "checkpoint path (default <out_dir>/model.zsfm)",
         [](Settings& s, const std::string& v) { s.model_path = v; }},
        {"out_dir", "output directory (default .)",
         [](Settings& s, const std::string& v) { s.out_dir = v; }},
        {"synth_dim_a", "synth: attribute dimension (default 16)",
         [](Settings& s, const std::string& v) { s.synth.dim_a = parse_u32(v); }},
        {"synth_dim_d", "synth: feature dimension (default 32)",
         [](Settings& s, const std::string& v) { s.synth.dim_d = parse_u32(v); }},
        {"synth_num_seen", "synth: seen classes (default 12)",
         [](Settings& s, const std::string& v) { s.synth.num_seen = parse_u32(v); }},
        {"synth_num_unseen", "synth: unseen classes (default 4)",
         [](Settings& s, const std::string& v) { s.synth.num_unseen = parse_u32(v); }},
        {"synth_train_per_class", "synth: training samples per seen class (default 60)",
         [](Settings& s, const std::string& v) { s.synth.train_per_class = parse_u32(v); }},
        {"synth_test_per_class", "synth: test samples per class (default 20)",
         [](Settings& s, const std::string& v) { s.synth.test_per_class = parse_u32(v); }},
        {"synth_noise_sigma", "synth: feature noise stddev (default 0.3)",
         [](Settings& s, const std::string& v) { s.synth.noise_sigma = parse_double(v); }},
        {"synth_seed", "synth: RNG seed (default 7)",
         [](Settings& s, const std::string& v) { s.synth.seed = parse_u64(v); }},
    };
    return defs;
}

const KeyDef* find_key(const std::string& name) {
    for (const KeyDef& def : key_defs())
        if (name == def.name) return &def;
    return nullptr;
}

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

// Flat `key = value` config file. Command-line values win, so keys already
// present in overrides are skipped here.
void apply_config_file(const std::string& path, const std::map<std::string, std::string>& overrides,
                       Settings& settings) {
    std::ifstream in(path);
    if (!in) usage_error("cannot open config file: " + path);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            usage_error(path + " line " + std::to_string(line_no) + ": expected 'key = value'");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        const KeyDef* def = find_key(key);
        if (def == nullptr) usage_error(path + " line " + std::to_string(line_no) + ": unknown key '" + key + "'");
        if (overrides.count(key) != 0) continue;
        try {
            def->apply(settings, value);
        } catch (const std::runtime_error& e) {
            usage_error(path + " line " + std::to_string(line_no) + ": bad value for '" + key + "': " + e.what());
        }
    }
}

void apply_overrides(const std::map<std::string, std::string>& overrides, Settings& settings) {
    for (const auto& [key, value] : overrides) {
        const KeyDef* def = find_key(key);  // always found: options were built from key_defs()
        try {
            def->apply(settings, value);
        } catch (const std::runtime_error& e) {
            usage_error("bad value for --" + key + ": " + e.what());
        }
    }
}

// Per-subcommand option state collected by CLI11.
struct CommandArgs {
    std::string config_path;
    std::map<std::string, std::string> overrides;
    // sweep
    std::string param;
    std::vector<double> values;
    uint32_t repeats = 1;
    // eval
    bool zsl = false;
    // gradcheck
    uint32_t instances = 20;
    bool break_gradient = false;
};

void add_config_options(CLI::App* cmd, CommandArgs& args) {
    cmd->add_option("--config", args.config_path, "flat `key = value` config file; --key options override it");
    for (const KeyDef& def : key_defs()) {
        cmd->add_option_function<std::string>(
                std::string("--") + def.name,
                [&args, name = std::string(def.name)](const std::string& value) { args.overrides[name] = value; },
                def.help)
            ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    }
}

Settings build_settings(const CommandArgs& args) {
    Settings settings;
    if (!args.config_path.empty()) apply_config_file(args.config_path, args.overrides, settings);
    apply_overrides(args.overrides, settings);
    return settings;
}

void require_input(const std::string& path, const char* what) {
    if (!fs::exists(path)) usage_error(std::string("missing ") + what + ": " + path);
}

void ensure_out_dir(const Settings& s) {
    std::error_code ec;
    fs::create_directories(s.out_dir, ec);
    if (ec) {
        std::fprintf(stderr, "error: cannot create output directory %s: %s\n", s.out_dir.c_str(),
                     ec.message().c_str());
        throw ExitError{3};
    }
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) {
        std::fprintf(stderr, "error: cannot write %s\n", path.c_str());
        throw ExitError{3};
    }
    return out;
}

// ---- subcommands -----------------------------------------------------------

int cmd_synth(const Settings& s) {
    zs_attributes* attrs = nullptr;
    zs_features *train = nullptr, *test_seen = nullptr, *test_unseen = nullptr;
    check(zs_synth_generate(&s.synth, &attrs, &train, &test_seen, &test_unseen));
    AttrsPtr attrs_owner(attrs, &zs_attributes_free);
    FeaturesPtr train_owner(train, &zs_features_free), seen_owner(test_seen, &zs_features_free),
        unseen_owner(test_unseen, &zs_features_free);

    ensure_out_dir(s);
    const std::string attrs_path = resolved(s, s.attributes_path, "attributes.csv");
    const std::string train_path = resolved(s, s.train_path, "train.zsfb");
    const std::string seen_path = resolved(s, s.test_seen_path, "test_seen.zsfb");
    const std::string unseen_path = resolved(s, s.test_unseen_path, "test_unseen.zsfb");
    check(zs_attributes_save(attrs, attrs_path.c_str()));
    check(zs_features_save(train, train_path.c_str()));
    check(zs_features_save(test_seen, seen_path.c_str()));
    check(zs_features_save(test_unseen, unseen_path.c_str()));

    uint32_t n_train = 0, n_seen = 0, n_unseen = 0;
    zs_features_info(train, &n_train, nullptr, nullptr);
    zs_features_info(test_seen, &n_seen, nullptr, nullptr);
    zs_features_info(test_unseen, &n_unseen, nullptr, nullptr);
    std::fprintf(stderr,
                 "synth: %u seen + %u unseen classes, dim %u; %u train / %u test-seen / %u test-unseen samples\n",
                 s.synth.num_seen, s.synth.num_unseen, s.synth.dim_d, n_train, n_seen, n_unseen);
    std::fprintf(stderr, "synth: wrote %s, %s, %s, %s\n", attrs_path.c_str(), train_path.c_str(), seen_path.c_str(),
                 unseen_path.c_str());
    return 0;
}

int cmd_train(const Settings& s) {
    const std::string attrs_path = resolved(s, s.attributes_path, "attributes.csv");
    const std::string train_path = resolved(s, s.train_path, "train.zsfb");
    require_input(attrs_path, "attribute file");
    require_input(train_path, "training feature file");

    const AttrsPtr attrs = load_attrs(attrs_path);
    const FeaturesPtr train = load_features(train_path);

    std::vector<double> losses(s.train.epochs, 0.0);
    zs_model* model = nullptr;
    check(zs_train(&s.train, attrs.get(), train.get(), losses.data(), &model));
    const ModelPtr model_owner(model, &zs_model_free);

    ensure_out_dir(s);
    const std::string model_path = resolved(s, s.model_path, "model.zsfm");
    check(zs_model_save(model, model_path.c_str()));

    const std::string history_path = (fs::path(s.out_dir) / "history.csv").string();
    std::ofstream history = open_out(history_path);
    history << "epoch,loss,val_ah\n";
    char buf[40];
    for (std::size_t e = 0; e < losses.size(); ++e) {
        std::snprintf(buf, sizeof buf, "%.17g", losses[e]);
        history << (e + 1) << ',' << buf << ",\n";  // no validation sets in CLI runs
    }
    history.close();

    std::fprintf(stderr, "train: %u epochs, final loss %.6f\n", s.train.epochs,
                 losses.empty() ? 0.0 : losses.back());
    std::fprintf(stderr, "train: wrote %s and %s\n", model_path.c_str(), history_path.c_str());
    return 0;
}

int cmd_eval(const Settings& s, bool with_zsl) {
    const std::string model_path = resolved(s, s.model_path, "model.zsfm");
    const std::string seen_path = resolved(s, s.test_seen_path, "test_seen.zsfb");
    const std::string unseen_path = resolved(s, s.test_unseen_path, "test_unseen.zsfb");
    require_input(model_path, "checkpoint");
    require_input(seen_path, "seen-class test feature file");
    require_input(unseen_path, "unseen-class test feature file");

    zs_model* model = nullptr;
    check(zs_model_load(model_path.c_str(), &model));
    const ModelPtr model_owner(model, &zs_model_free);
    const FeaturesPtr test_seen = load_features(seen_path);
    const FeaturesPtr test_unseen = load_features(unseen_path);

    zs_gzsl_metrics metrics{};
    check(zs_evaluate_gzsl(model, test_seen.get(), test_unseen.get(), &metrics));

    nlohmann::ordered_json record;
    record["a_seen"] = metrics.a_seen;
    record["a_unseen"] = metrics.a_unseen;
    record["a_harmonic"] = metrics.a_harmonic;
    if (with_zsl) {
        double zsl_acc = 0.0;
        check(zs_evaluate_zsl(model, test_unseen.get(), &zsl_acc));
        record["a_zsl"] = zsl_acc;
    }
    const std::string line = record.dump();

    std::printf("%s\n", line.c_str());
    ensure_out_dir(s);
    const std::string metrics_path = (fs::path(s.out_dir) / "metrics.jsonl").string();
    std::ofstream out = open_out(metrics_path);
    out << line << "\n";
    out.close();
    std::fprintf(stderr, "eval: wrote %s\n", metrics_path.c_str());
    return 0;
}

int cmd_sweep(const Settings& s, const CommandArgs& args) {
    if (args.repeats == 0) usage_error("--repeats must be >= 1");
    const bool is_q = args.param == "q";

    const std::string attrs_path = resolved(s, s.attributes_path, "attributes.csv");
    const std::string train_path = resolved(s, s.train_path, "train.zsfb");
    const std::string seen_path = resolved(s, s.test_seen_path, "test_seen.zsfb");
    const std::string unseen_path = resolved(s, s.test_unseen_path, "test_unseen.zsfb");
    require_input(attrs_path, "attribute file");
    require_input(train_path, "training feature file");
    require_input(seen_path, "seen-class test feature file");
    require_input(unseen_path, "unseen-class test feature file");

    const AttrsPtr attrs = load_attrs(attrs_path);
    const FeaturesPtr train = load_features(train_path);
    const FeaturesPtr test_seen = load_features(seen_path);
    const FeaturesPtr test_unseen = load_features(unseen_path);

    std::vector<zs_sweep_row> rows(args.values.size());
    uint32_t best = 0;
    check(zs_sweep(&s.train, is_q ? ZS_SWEEP_Q : ZS_SWEEP_TAU, args.values.data(),
                   static_cast<uint32_t>(args.values.size()), args.repeats, attrs.get(), train.get(),
                   test_seen.get(), test_unseen.get(), rows.data(), &best));

    ensure_out_dir(s);
    const std::string csv_path = (fs::path(s.out_dir) / (is_q ? "sweep_q.csv" : "sweep_tau.csv")).string();
    std::ofstream out = open_out(csv_path);
    out << "param,a_seen,a_unseen,a_harmonic\n";
    char buf[160];
    for (const zs_sweep_row& row : rows) {
        std::snprintf(buf, sizeof buf, "%.6f,%.6f,%.6f,%.6f\n", row.value, row.metrics.a_seen, row.metrics.a_unseen,
                      row.metrics.a_harmonic);
        out << buf;
    }
    out.close();

    std::fprintf(stderr, "sweep: wrote %s (%zu points)\n", csv_path.c_str(), rows.size());
    std::fprintf(stderr, "sweep: best %s=%.6f with a_seen=%.4f a_unseen=%.4f a_harmonic=%.4f\n",
                 is_q ? "q" : "tau", rows[best].value, rows[best].metrics.a_seen, rows[best].metrics.a_unseen,
                 rows[best].metrics.a_harmonic);
    return 0;
}

int cmd_gradcheck(const Settings& s, const CommandArgs& args) {
    double max_rel_error = 0.0;
    check(zs_gradcheck(s.train.seed, args.instances, args.break_gradient ? 1 : 0, &max_rel_error));
    std::printf("max relative gradient error: %.6e\n", max_rel_error);
    if (max_rel_error > kGradTolerance) {
        std::fprintf(stderr, "gradcheck: FAILED (tolerance %.1e)\n", kGradTolerance);
        return 1;
    }
    std::fprintf(stderr, "gradcheck: ok (%u instances, tolerance %.1e)\n", args.instances, kGradTolerance);
    return 0;
}

int cmd_dump_softlabels(const Settings& s) {
    const std::string attrs_path = resolved(s, s.attributes_path, "attributes.csv");
    require_input(attrs_path, "attribute file");
    const AttrsPtr attrs = load_attrs(attrs_path);

    uint32_t dim_a = 0, num_seen = 0, num_unseen = 0;
    zs_attributes_info(attrs.get(), &dim_a, &num_seen, &num_unseen);
    const uint32_t num_classes = num_seen + num_unseen;
    std::vector<double> table(static_cast<std::size_t>(num_seen) * num_classes);
    check(zs_softlabel_table(attrs.get(), s.train.mode, s.train.q, s.train.tau, table.data()));

    ensure_out_dir(s);
    const std::string csv_path = (fs::path(s.out_dir) / "softlabels.csv").string();
    std::ofstream out = open_out(csv_path);
    out << "class";
    for (uint32_t k = 0; k < num_classes; ++k) out << ',' << zs_attributes_class_name(attrs.get(), k);
    out << "\n";
    char buf[40];
    for (uint32_t row = 0; row < num_seen; ++row) {
        out << zs_attributes_class_name(attrs.get(), row);
        for (uint32_t k = 0; k < num_classes; ++k) {
            std::snprintf(buf, sizeof buf, "%.17g", table[static_cast<std::size_t>(row) * num_classes + k]);
            out << ',' << buf;
        }
        out << "\n";
    }
    out.close();
    std::fprintf(stderr, "dump-softlabels: wrote %s (%u rows)\n", csv_path.c_str(), num_seen);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"softzsl: generalized zero-shot learning with similarity-based soft labels"};
    app.require_subcommand(1);

    CommandArgs synth_args, train_args, eval_args, sweep_args, grad_args, dump_args;

    CLI::App* synth = app.add_subcommand("synth", "generate the synthetic benchmark files");
    add_config_options(synth, synth_args);

    CLI::App* train = app.add_subcommand("train", "train a model; writes checkpoint and history CSV");
    add_config_options(train, train_args);

    CLI::App* eval = app.add_subcommand("eval", "evaluate a checkpoint; writes a metrics JSON line");
    add_config_options(eval, eval_args);
    eval->add_flag("--zsl", eval_args.zsl, "also report classic ZSL accuracy (argmax over unseen classes only)");

    CLI::App* sweep = app.add_subcommand("sweep", "retrain across a q or tau grid; writes a CSV of metrics");
    add_config_options(sweep, sweep_args);
    sweep->add_option("--param", sweep_args.param, "which hyperparameter to sweep")
        ->required()
        ->check(CLI::IsMember({"q", "tau"}));
    sweep->add_option("--values", sweep_args.values, "comma-separated grid values")->required()->delimiter(',');
    sweep->add_option("--repeats", sweep_args.repeats,
                      "average each point over this many trainings with consecutive seeds (default 1)");

    CLI::App* grad = app.add_subcommand("gradcheck", "verify analytic gradients against finite differences");
    add_config_options(grad, grad_args);
    grad->add_option("--instances", grad_args.instances, "number of random instances (default 20)");
    grad->add_flag("--break-gradient", grad_args.break_gradient,
                   "inject a deliberate gradient error (negative control; must exit 1)");

    CLI::App* dump = app.add_subcommand("dump-softlabels", "write the soft label table as CSV");
    add_config_options(dump, dump_args);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (synth->parsed()) return cmd_synth(build_settings(synth_args));
        if (train->parsed()) return cmd_train(build_settings(train_args));
        if (eval->parsed()) return cmd_eval(build_settings(eval_args), eval_args.zsl);
        if (sweep->parsed()) return cmd_sweep(build_settings(sweep_args), sweep_args);
        if (grad->parsed()) return cmd_gradcheck(build_settings(grad_args), grad_args);
        if (dump->parsed()) return cmd_dump_softlabels(build_settings(dump_args));
    } catch (const ExitError& e) {
        return e.code;
    }
    return 0;
}

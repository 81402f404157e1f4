#include "core/model.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <numeric>
#include <string>

#include "core/error.hpp"
#include "core/rng.hpp"

namespace zsl {

namespace {

constexpr char kModelMagic[4] = {'Z', 'S', 'F', 'M'};
constexpr std::uint32_t kModelVersion = 1;
constexpr double kLogFloor = 1e-300;

double safe_log(double x) { return std::log(x < kLogFloor ? kLogFloor : x); }

void check_params(const ModelParams& p) {
    const std::size_t h = p.w1.rows();
    const std::size_t a = p.w2.rows();
    if (p.b1.size() != h || p.w2.cols() != h || p.b2.size() != a || p.attrs.dim_a != a)
        fail(ErrorCode::dimension_mismatch, "inconsistent model parameter shapes");
    if (p.attrs.num_seen == 0 || p.attrs.num_unseen == 0)
        fail(ErrorCode::invalid_argument, "model needs at least one seen and one unseen class");
}

void check_batch(const FeatureSet& data, std::span<const std::size_t> batch, const SoftLabelTable& table,
                 const ModelParams& params) {
    check_params(params);
    if (batch.empty()) fail(ErrorCode::invalid_argument, "empty batch");
    if (data.dim != params.input_dim())
        fail(ErrorCode::dimension_mismatch, "feature dimension " + std::to_string(data.dim) +
                                                " vs model input dimension " + std::to_string(params.input_dim()));
    if (table.rows.cols() != params.attrs.num_classes())
        fail(ErrorCode::dimension_mismatch, "label table class count mismatch");
    for (std::size_t i : batch) {
        if (i >= data.size()) fail(ErrorCode::invalid_argument, "batch index out of range");
        if (data.labels[i] >= table.rows.rows())
            fail(ErrorCode::invalid_argument,
                 "sample " + std::to_string(i) + " has label " + std::to_string(data.labels[i]) +
                     ", not a seen class (num_seen " + std::to_string(table.rows.rows()) + ")");
    }
}

std::vector<std::size_t> all_indices(const FeatureSet& data) {
    std::vector<std::size_t> idx(data.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    return idx;
}

double penalty(const ModelParams& params, const RegConfig& reg) {
    double sq = 0.0, l1 = 0.0;
    for (double w : params.w1.data()) {
        sq += w * w;
        l1 += std::fabs(w);
    }
    for (double w : params.w2.data()) {
        sq += w * w;
        l1 += std::fabs(w);
    }
    return reg.lambda_l2 * sq + reg.gamma_l1 * l1;
}

double sign(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

}  // namespace

ModelParams init_params(const AttributeMatrix& attrs, std::size_t input_dim, std::size_t hidden,
                        Activation activation, std::uint64_t seed) {
    if (input_dim == 0 || hidden == 0) fail(ErrorCode::invalid_argument, "init_params: zero dimension");
    if (attrs.dim_a == 0 || attrs.num_seen == 0 || attrs.num_unseen == 0)
        fail(ErrorCode::invalid_argument, "init_params: degenerate attribute matrix");
    Rng rng(stream_seed(seed, kStreamInit));
    ModelParams p;
    p.activation = activation;
    p.attrs = attrs;
    p.w1 = Matrix(hidden, input_dim);
    p.b1.assign(hidden, 0.0);
    p.w2 = Matrix(attrs.dim_a, hidden);
    p.b2.assign(attrs.dim_a, 0.0);
    const double lim1 = std::sqrt(6.0 / static_cast<double>(input_dim + hidden));
    for (double& w : p.w1.data()) w = rng.uniform(-lim1, lim1);
    const double lim2 = std::sqrt(6.0 / static_cast<double>(hidden + attrs.dim_a));
    for (double& w : p.w2.data()) w = rng.uniform(-lim2, lim2);
    return p;
}

Vector embed(std::span<const double> x, const ModelParams& params) {
    check_params(params);
    Vector z1 = matvec(params.w1, x);
    for (std::size_t i = 0; i < z1.size(); ++i) z1[i] += params.b1[i];
    const Vector h1 = activate(params.activation, z1);
    Vector e = matvec(params.w2, h1);
    for (std::size_t i = 0; i < e.size(); ++i) e[i] += params.b2[i];
    return e;
}

Vector scores(std::span<const double> x, const ModelParams& params) {
    const Vector e = embed(x, params);
    const std::size_t num_classes = params.attrs.num_classes();
    Vector s(num_classes);
    for (std::size_t k = 0; k < num_classes; ++k) s[k] = dot(params.attrs.attribute(k), e);
    return s;
}

Vector predict_proba(std::span<const double> x, const ModelParams& params) {
    return softmax(scores(x, params));
}

double loss(const FeatureSet& data, std::span<const std::size_t> batch, const SoftLabelTable& table,
            const ModelParams& params, const RegConfig& reg) {
    check_batch(data, batch, table, params);
    double ce_sum = 0.0;
    for (std::size_t i : batch) {
        const Vector p = predict_proba(data.feature(i), params);
        const auto y = table.rows.row(data.labels[i]);
        double ce = 0.0;
        for (std::size_t k = 0; k < y.size(); ++k)
            if (y[k] != 0.0) ce -= y[k] * safe_log(p[k]);
        ce_sum += ce;
    }
    return ce_sum / static_cast<double>(batch.size()) + penalty(params, reg);
}

double loss(const FeatureSet& data, const SoftLabelTable& table, const ModelParams& params, const RegConfig& reg) {
    const auto idx = all_indices(data);
    return loss(data, idx, table, params, reg);
}

Gradients gradients(const FeatureSet& data, std::span<const std::size_t> batch, const SoftLabelTable& table,
                    const ModelParams& params, const RegConfig& reg, double* loss_out) {
    check_batch(data, batch, table, params);
    const std::size_t hidden = params.hidden_size();
    const std::size_t dim_a = params.attrs.dim_a;
    const std::size_t num_classes = params.attrs.num_classes();

    Gradients g;
    g.w1 = Matrix(hidden, params.input_dim());
    g.b1.assign(hidden, 0.0);
    g.w2 = Matrix(dim_a, hidden);
    g.b2.assign(dim_a, 0.0);

    double ce_sum = 0.0;
    for (std::size_t i : batch) {
        const auto x = data.feature(i);
        Vector z1 = matvec(params.w1, x);
        for (std::size_t j = 0; j < hidden; ++j) z1[j] += params.b1[j];
        const Vector h1 = activate(params.activation, z1);
        Vector e = matvec(params.w2, h1);
        for (std::size_t j = 0; j < dim_a; ++j) e[j] += params.b2[j];
        Vector s(num_classes);
        for (std::size_t k = 0; k < num_classes; ++k) s[k] = dot(params.attrs.attribute(k), e);
        const Vector p = softmax(s);
        const auto y = table.rows.row(data.labels[i]);

        if (loss_out != nullptr) {
            // mirror loss() operation for operation so the fused value is
            // bit-identical to a separate call
            double ce = 0.0;
            for (std::size_t k = 0; k < num_classes; ++k)
                if (y[k] != 0.0) ce -= y[k] * safe_log(p[k]);
            ce_sum += ce;
        }

        // dL/ds = p - y; the attribute layer is frozen, so only the chain
        // back through the embedding is accumulated.
        Vector ds(num_classes);
        for (std::size_t k = 0; k < num_classes; ++k) ds[k] = p[k] - y[k];
        const Vector de = matvec_transposed(params.attrs.vectors, ds);  // (C x a)^T view: sum_k ds_k a_k
        for (std::size_t r = 0; r < dim_a; ++r) {
            const double der = de[r];
            g.b2[r] += der;
            auto grow = g.w2.row(r);
            for (std::size_t c = 0; c < hidden; ++c) grow[c] += der * h1[c];
        }
        const Vector dh1 = matvec_transposed(params.w2, de);
        for (std::size_t r = 0; r < hidden; ++r) {
            const double dz = dh1[r] * activate_grad(params.activation, z1[r]);
            g.b1[r] += dz;
            auto grow = g.w1.row(r);
            for (std::size_t c = 0; c < x.size(); ++c) grow[c] += dz * x[c];
        }
    }

    const double inv_b = 1.0 / static_cast<double>(batch.size());
    for (double& v : g.w1.data()) v *= inv_b;
    for (double& v : g.b1) v *= inv_b;
    for (double& v : g.w2.data()) v *= inv_b;
    for (double& v : g.b2) v *= inv_b;

    for (std::size_t i = 0; i < g.w1.data().size(); ++i) {
        const double w = params.w1.data()[i];
        g.w1.data()[i] += 2.0 * reg.lambda_l2 * w + reg.gamma_l1 * sign(w);
    }
    for (std::size_t i = 0; i < g.w2.data().size(); ++i) {
        const double w = params.w2.data()[i];
        g.w2.data()[i] += 2.0 * reg.lambda_l2 * w + reg.gamma_l1 * sign(w);
    }

    if (loss_out != nullptr) *loss_out = ce_sum / static_cast<double>(batch.size()) + penalty(params, reg);
    return g;
}

Gradients gradients(const FeatureSet& data, const SoftLabelTable& table, const ModelParams& params,
                    const RegConfig& reg, double* loss_out) {
    const auto idx = all_indices(data);
    return gradients(data, idx, table, params, reg, loss_out);
}

LossSplit loss_decomposition(const FeatureSet& data, std::span<const std::size_t> batch,
                             const SoftLabelTable& table, const ModelParams& params) {
    check_batch(data, batch, table, params);
    const std::size_t num_seen = params.attrs.num_seen;
    const std::size_t num_classes = params.attrs.num_classes();
    const double q = table.config.q;
    LossSplit split;
    for (std::size_t i : batch) {
        const Vector p = predict_proba(data.feature(i), params);
        double mass_seen = 0.0, mass_unseen = 0.0;
        for (std::size_t k = 0; k < num_seen; ++k) mass_seen += p[k];
        for (std::size_t k = num_seen; k < num_classes; ++k) mass_unseen += p[k];
        split.seen_ce -= safe_log(p[data.labels[i]]) - safe_log(mass_seen);
        if (q > 0.0) {
            const auto y = table.rows.row(data.labels[i]);
            double u = 0.0;
            for (std::size_t k = num_seen; k < num_classes; ++k)
                if (y[k] != 0.0) u -= (y[k] / q) * (safe_log(p[k]) - safe_log(mass_unseen));
            split.unseen_ce += u;
        }
    }
    const double inv_b = 1.0 / static_cast<double>(batch.size());
    split.seen_ce *= inv_b;
    split.unseen_ce *= inv_b;
    return split;
}

LossSplit loss_decomposition(const FeatureSet& data, const SoftLabelTable& table, const ModelParams& params) {
    const auto idx = all_indices(data);
    return loss_decomposition(data, idx, table, params);
}

namespace {

void put_u32le(std::ofstream& out, std::uint32_t v, const std::string& path) {
    const unsigned char b[4] = {static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8),
                                static_cast<unsigned char>(v >> 16), static_cast<unsigned char>(v >> 24)};
    out.write(reinterpret_cast<const char*>(b), 4);
    if (!out) fail(ErrorCode::io, "write failed: " + path);
}

void put_f64le(std::ofstream& out, double v, const std::string& path) {
    const std::uint64_t bits = std::bit_cast<std::uint64_t>(v);
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(bits >> (8 * i));
    out.write(reinterpret_cast<const char*>(b), 8);
    if (!out) fail(ErrorCode::io, "write failed: " + path);
}

std::uint32_t get_u32le(std::ifstream& in, const std::string& path) {
    unsigned char b[4];
    in.read(reinterpret_cast<char*>(b), 4);
    if (!in) fail(ErrorCode::format, "truncated checkpoint: " + path);
    return static_cast<std::uint32_t>(b[0]) | static_cast<std::uint32_t>(b[1]) << 8 |
           static_cast<std::uint32_t>(b[2]) << 16 | static_cast<std::uint32_t>(b[3]) << 24;
}

double get_f64le(std::ifstream& in, const std::string& path) {
    unsigned char b[8];
    in.read(reinterpret_cast<char*>(b), 8);
    if (!in) fail(ErrorCode::format, "truncated checkpoint: " + path);
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    const double v = std::bit_cast<double>(bits);
    if (!std::isfinite(v)) fail(ErrorCode::format, "non-finite parameter in checkpoint: " + path);
    return v;
}

}  // namespace

void save_model(const ModelParams& params, const std::string& path) {
    check_params(params);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorCode::io, "cannot open for writing: " + path);
    out.write(kModelMagic, 4);
    put_u32le(out, kModelVersion, path);
    put_u32le(out, static_cast<std::uint32_t>(params.input_dim()), path);
    put_u32le(out, static_cast<std::uint32_t>(params.hidden_size()), path);
    put_u32le(out, static_cast<std::uint32_t>(params.attrs.dim_a), path);
    put_u32le(out, static_cast<std::uint32_t>(params.attrs.num_seen), path);
    put_u32le(out, static_cast<std::uint32_t>(params.attrs.num_unseen), path);
    const unsigned char act = static_cast<unsigned char>(params.activation);
    out.write(reinterpret_cast<const char*>(&act), 1);
    if (!out) fail(ErrorCode::io, "write failed: " + path);
    for (double v : params.w1.data()) put_f64le(out, v, path);
    for (double v : params.b1) put_f64le(out, v, path);
    for (double v : params.w2.data()) put_f64le(out, v, path);
    for (double v : params.b2) put_f64le(out, v, path);
    // Attribute matrix in its mathematical a x C orientation.
    for (std::size_t i = 0; i < params.attrs.dim_a; ++i)
        for (std::size_t k = 0; k < params.attrs.num_classes(); ++k)
            put_f64le(out, params.attrs.vectors(k, i), path);
}

ModelParams load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::io, "cannot open checkpoint: " + path);
    char magic[4];
    in.read(magic, 4);
    if (!in || !std::equal(magic, magic + 4, kModelMagic))
        fail(ErrorCode::format, "bad magic (not a checkpoint): " + path);
    const std::uint32_t version = get_u32le(in, path);
    if (version != kModelVersion)
        fail(ErrorCode::format, "unsupported checkpoint version " + std::to_string(version) + ": " + path);
    const std::uint32_t input_dim = get_u32le(in, path);
    const std::uint32_t hidden = get_u32le(in, path);
    const std::uint32_t dim_a = get_u32le(in, path);
    const std::uint32_t num_seen = get_u32le(in, path);
    const std::uint32_t num_unseen = get_u32le(in, path);
    if (input_dim == 0 || hidden == 0 || dim_a == 0 || num_seen == 0 || num_unseen == 0)
        fail(ErrorCode::format, "zero dimension in checkpoint header: " + path);
    unsigned char act = 0;
    in.read(reinterpret_cast<char*>(&act), 1);
    if (!in) fail(ErrorCode::format, "truncated checkpoint: " + path);
    if (act > static_cast<unsigned char>(Activation::relu))
        fail(ErrorCode::format, "unknown activation code " + std::to_string(act) + ": " + path);

    ModelParams p;
    p.activation = static_cast<Activation>(act);
    p.w1 = Matrix(hidden, input_dim);
    for (double& v : p.w1.data()) v = get_f64le(in, path);
    p.b1.resize(hidden);
    for (double& v : p.b1) v = get_f64le(in, path);
    p.w2 = Matrix(dim_a, hidden);
    for (double& v : p.w2.data()) v = get_f64le(in, path);
    p.b2.resize(dim_a);
    for (double& v : p.b2) v = get_f64le(in, path);

    const std::uint32_t num_classes = num_seen + num_unseen;
    p.attrs.dim_a = dim_a;
    p.attrs.num_seen = num_seen;
    p.attrs.num_unseen = num_unseen;
    p.attrs.vectors = Matrix(num_classes, dim_a);
    for (std::uint32_t i = 0; i < dim_a; ++i)
        for (std::uint32_t k = 0; k < num_classes; ++k) p.attrs.vectors(k, i) = get_f64le(in, path);
    for (std::uint32_t k = 0; k < num_classes; ++k) {
        p.attrs.class_names.push_back(k < num_seen ? "seen_" + std::to_string(k)
                                                   : "unseen_" + std::to_string(k - num_seen));
        p.attrs.source_rows.push_back(k);
    }
    if (in.peek() != std::ifstream::traits_type::eof())
        fail(ErrorCode::format, "trailing bytes after checkpoint payload: " + path);
    return p;
}

}  // namespace zsl

#pragma once

#include "core/dataset.hpp"
#include "core/softlabel.hpp"

namespace zsl {

struct RegConfig {
    double lambda_l2 = 0.0;  // Frobenius penalty weight
    double gamma_l1 = 0.0;   // elementwise L1 penalty weight
};

// Two trainable layers embed a visual feature into attribute space; the
// output layer is the frozen attribute matrix (scores are dot products with
// each class's attribute vector). Only w1/b1/w2/b2 ever receive gradients.
struct ModelParams {
    Matrix w1;  // hidden x input_dim
    Vector b1;  // hidden
    Matrix w2;  // dim_a x hidden
    Vector b2;  // dim_a
    Activation activation = Activation::sigmoid;
    AttributeMatrix attrs;

    std::size_t input_dim() const { return w1.cols(); }
    std::size_t hidden_size() const { return w1.rows(); }
};

struct Gradients {
    Matrix w1;
    Vector b1;
    Matrix w2;
    Vector b2;
};

// Glorot-uniform weights (limit sqrt(6/(fan_in+fan_out))), zero biases.
// Deterministic given seed; draw order is w1 then w2, row-major.
ModelParams init_params(const AttributeMatrix& attrs, std::size_t input_dim, std::size_t hidden,
                        Activation activation, std::uint64_t seed);

// g(x) = w2 · act(w1·x + b1) + b2. The second layer is linear: attribute
// targets are not range-bounded in general.
Vector embed(std::span<const double> x, const ModelParams& params);
// s_k = <g(x), a_k> for every class k.
Vector scores(std::span<const double> x, const ModelParams& params);
// softmax(scores); sums to 1.
Vector predict_proba(std::span<const double> x, const ModelParams& params);

// Mean cross-entropy of predictions against the soft labels of each sample's
// class, plus lambda*(||w1||_F^2 + ||w2||_F^2) + gamma*(||w1||_1 + ||w2||_1).
// Biases are unpenalized. log() inputs are clamped at 1e-300. The batch is a
// list of sample indices into `data`; every indexed label must be a seen
// class (< table row count).
double loss(const FeatureSet& data, std::span<const std::size_t> batch, const SoftLabelTable& table,
            const ModelParams& params, const RegConfig& reg);
double loss(const FeatureSet& data, const SoftLabelTable& table, const ModelParams& params, const RegConfig& reg);

// Exact analytic gradient of `loss` (softmax+cross-entropy gradient at the
// scores is p - y; L1 subgradient at 0 is 0). If loss_out is non-null it
// receives the full objective value from the same pass.
Gradients gradients(const FeatureSet& data, std::span<const std::size_t> batch, const SoftLabelTable& table,
                    const ModelParams& params, const RegConfig& reg, double* loss_out = nullptr);
Gradients gradients(const FeatureSet& data, const SoftLabelTable& table, const ModelParams& params,
                    const RegConfig& reg, double* loss_out = nullptr);

// The two renormalized cross-entropy components of the objective: seen_ce
// treats the distribution within the seen block, unseen_ce within the unseen
// block. With q = table q, P_S/P_U the predicted block masses, and y-bar the
// unseen label row divided by q:
//   batch CE = (1-q)·seen_ce + q·unseen_ce
//              + mean_i[-(1-q)·log P_S(x_i) - q·log P_U(x_i)]
// (the last term is the block-partition cross-entropy). unseen_ce is defined
// as 0 when q = 0.
struct LossSplit {
    double seen_ce = 0.0;
    double unseen_ce = 0.0;
};

LossSplit loss_decomposition(const FeatureSet& data, std::span<const std::size_t> batch,
                             const SoftLabelTable& table, const ModelParams& params);
LossSplit loss_decomposition(const FeatureSet& data, const SoftLabelTable& table, const ModelParams& params);

// Checkpoint: magic "ZSFM", little-endian u32 version=1, u32 input_dim,
// hidden, dim_a, num_seen, num_unseen, u8 activation, then w1, b1, w2, b2 and
// the attribute matrix (dim_a x C, row-major) as little-endian f64.
void save_model(const ModelParams& params, const std::string& path);
ModelParams load_model(const std::string& path);

}  // namespace zsl

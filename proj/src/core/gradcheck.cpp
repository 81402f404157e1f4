#include "core/gradcheck.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "core/error.hpp"
#include "core/model.hpp"
#include "core/rng.hpp"

namespace zsl {

namespace {

constexpr std::size_t kInputDim = 6;
constexpr std::size_t kHidden = 5;
constexpr std::size_t kDimA = 4;
constexpr std::size_t kNumSeen = 3;
constexpr std::size_t kNumUnseen = 2;
constexpr std::size_t kBatch = 3;
constexpr double kFdStep = 1e-5;
constexpr double kRelFloor = 1e-4;

}  // namespace

GradCheckReport gradcheck(std::uint64_t seed, std::size_t instances, bool inject_fault) {
    if (instances == 0) fail(ErrorCode::invalid_argument, "gradcheck: instances must be >= 1");
    Rng rng(stream_seed(seed, kStreamGradCheck));

    GradCheckReport report;
    report.instances = instances;
    for (std::size_t inst = 0; inst < instances; ++inst) {
        AttributeMatrix attrs;
        attrs.dim_a = kDimA;
        attrs.num_seen = kNumSeen;
        attrs.num_unseen = kNumUnseen;
        attrs.vectors = Matrix(kNumSeen + kNumUnseen, kDimA);
        for (double& v : attrs.vectors.data()) v = rng.uniform(-1.0, 1.0);
        for (std::size_t k = 0; k < attrs.num_classes(); ++k) {
            attrs.class_names.push_back("c" + std::to_string(k));
            attrs.source_rows.push_back(k);
        }

        ModelParams params;
        params.activation = static_cast<Activation>(inst % 4);
        params.attrs = attrs;
        params.w1 = Matrix(kHidden, kInputDim);
        params.b1.resize(kHidden);
        params.w2 = Matrix(kDimA, kHidden);
        params.b2.resize(kDimA);
        for (double& v : params.w1.data()) v = rng.uniform(-0.8, 0.8);
        for (double& v : params.b1) v = rng.uniform(-0.5, 0.5);
        for (double& v : params.w2.data()) v = rng.uniform(-0.8, 0.8);
        for (double& v : params.b2) v = rng.uniform(-0.5, 0.5);

        FeatureSet batch;
        batch.dim = kInputDim;
        batch.num_classes = attrs.num_classes();
        batch.features = Matrix(kBatch, kInputDim);
        for (double& v : batch.features.data()) v = rng.normal();
        for (std::size_t i = 0; i < kBatch; ++i)
            batch.labels.push_back(static_cast<std::uint32_t>(rng.index(kNumSeen)));

        const SoftLabelTable table = build_table(attrs, {LabelMode::du, 0.3, 0.5});
        const RegConfig reg{0.01, 0.01};

        Gradients analytic = gradients(batch, table, params, reg);
        if (inject_fault) analytic.w1(0, 0) += 0.05;

        // Walk every trainable coordinate; slots alias the live parameter
        // storage so the finite-difference probes perturb in place.
        struct Block {
            double* values;
            const double* grads;
            std::size_t len;
        };
        const Block blocks[] = {
            {params.w1.data().data(), analytic.w1.data().data(), params.w1.data().size()},
            {params.b1.data(), analytic.b1.data(), params.b1.size()},
            {params.w2.data().data(), analytic.w2.data().data(), params.w2.data().size()},
            {params.b2.data(), analytic.b2.data(), params.b2.size()},
        };
        for (const Block& block : blocks) {
            for (std::size_t i = 0; i < block.len; ++i) {
                const double saved = block.values[i];
                block.values[i] = saved + kFdStep;
                const double up = loss(batch, table, params, reg);
                block.values[i] = saved - kFdStep;
                const double down = loss(batch, table, params, reg);
                block.values[i] = saved;
                const double numeric = (up - down) / (2.0 * kFdStep);
                const double a = block.grads[i];
                const double rel = std::fabs(a - numeric) / std::max({std::fabs(a), std::fabs(numeric), kRelFloor});
                report.max_rel_error = std::max(report.max_rel_error, rel);
                ++report.coordinates;
            }
        }
    }
    return report;
}

}  // namespace zsl

#include "core/softlabel.hpp"

#include <cmath>
#include <string>

#include "core/error.hpp"

namespace zsl {

namespace {

void check_label_args(std::size_t seen_class, const AttributeMatrix& attrs, double q) {
    if (attrs.num_seen == 0 || attrs.num_unseen == 0)
        fail(ErrorCode::invalid_argument, "soft labels need at least one seen and one unseen class");
    if (seen_class >= attrs.num_seen)
        fail(ErrorCode::invalid_argument, "seen class index " + std::to_string(seen_class) + " >= num_seen " +
                                              std::to_string(attrs.num_seen));
    if (!(q >= 0.0 && q <= 1.0)) fail(ErrorCode::invalid_argument, "q must be in [0,1]");
}

Vector similarity_row(std::size_t seen_class, const AttributeMatrix& attrs) {
    Vector sims(attrs.num_unseen);
    for (std::size_t u = 0; u < attrs.num_unseen; ++u)
        sims[u] = dot(attrs.attribute(seen_class), attrs.attribute(attrs.num_seen + u));
    return sims;
}

}  // namespace

LabelMode label_mode_from_name(std::string_view name) {
    if (name == "nu" || name == "NU") return LabelMode::nu;
    if (name == "du" || name == "DU") return LabelMode::du;
    fail(ErrorCode::invalid_argument, "unknown label mode '" + std::string(name) + "' (expected NU|DU)");
}

std::string_view to_string(LabelMode mode) {
    return mode == LabelMode::nu ? "NU" : "DU";
}

Matrix seen_unseen_similarity(const AttributeMatrix& attrs) {
    if (attrs.num_seen == 0 || attrs.num_unseen == 0)
        fail(ErrorCode::invalid_argument, "similarity needs at least one seen and one unseen class");
    Matrix sims(attrs.num_seen, attrs.num_unseen);
    for (std::size_t s = 0; s < attrs.num_seen; ++s)
        for (std::size_t u = 0; u < attrs.num_unseen; ++u)
            sims(s, u) = dot(attrs.attribute(s), attrs.attribute(attrs.num_seen + u));
    return sims;
}

Vector soft_label_du(std::size_t seen_class, const AttributeMatrix& attrs, double q, double tau) {
    check_label_args(seen_class, attrs, q);
    if (!(tau > 0.0)) fail(ErrorCode::invalid_argument, "tau must be > 0");
    Vector label(attrs.num_classes(), 0.0);
    label[seen_class] = 1.0 - q;
    const Vector weights = softmax(similarity_row(seen_class, attrs), tau);
    for (std::size_t u = 0; u < attrs.num_unseen; ++u) label[attrs.num_seen + u] = q * weights[u];
    return label;
}

Vector soft_label_nu(std::size_t seen_class, const AttributeMatrix& attrs, double q) {
    check_label_args(seen_class, attrs, q);
    const Vector sims = similarity_row(seen_class, attrs);
    std::size_t nearest = 0;
    for (std::size_t u = 1; u < sims.size(); ++u)
        if (sims[u] > sims[nearest]) nearest = u;  // strict: ties keep the lowest index
    Vector label(attrs.num_classes(), 0.0);
    label[seen_class] = 1.0 - q;
    label[attrs.num_seen + nearest] = q;
    return label;
}

SoftLabelTable build_table(const AttributeMatrix& attrs, const SoftLabelConfig& config) {
    SoftLabelTable table;
    table.config = config;
    table.rows = Matrix(attrs.num_seen, attrs.num_classes());
    for (std::size_t s = 0; s < attrs.num_seen; ++s) {
        const Vector label = config.mode == LabelMode::du ? soft_label_du(s, attrs, config.q, config.tau)
                                                          : soft_label_nu(s, attrs, config.q);
        std::copy(label.begin(), label.end(), table.rows.row(s).begin());
    }
    return table;
}

double unseen_entropy(std::span<const double> label, std::size_t num_seen) {
    if (num_seen >= label.size()) fail(ErrorCode::invalid_argument, "unseen_entropy: no unseen coordinates");
    double mass = 0.0;
    for (std::size_t k = num_seen; k < label.size(); ++k) mass += label[k];
    if (!(mass > 0.0)) fail(ErrorCode::invalid_argument, "unseen_entropy: zero unseen mass");
    double h = 0.0;
    for (std::size_t k = num_seen; k < label.size(); ++k) {
        const double p = label[k] / mass;
        if (p > 0.0) h -= p * std::log(p);
    }
    return h;
}

}  // namespace zsl

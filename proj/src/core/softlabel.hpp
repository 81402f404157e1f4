#pragma once

#include <string_view>

#include "core/dataset.hpp"

namespace zsl {

// How the unseen-class probability mass q is distributed:
//   nu — all of q on the single nearest unseen class (ties: lowest index);
//   du — q split over all unseen classes by a temperature softmax of the
//        attribute dot-product similarities.
// du converges to nu as tau -> 0 whenever the nearest unseen class is unique.
enum class LabelMode : std::uint8_t { nu = 0, du = 1 };

LabelMode label_mode_from_name(std::string_view name);
std::string_view to_string(LabelMode mode);

struct SoftLabelConfig {
    LabelMode mode = LabelMode::du;
    double q = 0.3;    // total probability mass on unseen classes, in [0,1]
    double tau = 0.5;  // temperature (> 0); only du reads it
};

// Raw dot products <a_s, a_u>, one row per seen class, one column per unseen
// class. No normalization.
Matrix seen_unseen_similarity(const AttributeMatrix& attrs);

// Full label vectors over all C classes for one seen class: the class itself
// gets 1-q, unseen classes share q per the mode, every other coordinate is 0.
Vector soft_label_du(std::size_t seen_class, const AttributeMatrix& attrs, double q, double tau);
Vector soft_label_nu(std::size_t seen_class, const AttributeMatrix& attrs, double q);

// Labels depend only on the class, so they are precomputed once per seen
// class, not per sample.
struct SoftLabelTable {
    SoftLabelConfig config;
    Matrix rows;  // num_seen x num_classes; row s = label vector for seen class s
};

SoftLabelTable build_table(const AttributeMatrix& attrs, const SoftLabelConfig& config);

// Shannon entropy (nats) of the unseen block of a label vector, renormalized
// to a distribution. Errors if the unseen mass is zero.
double unseen_entropy(std::span<const double> label, std::size_t num_seen);

}  // namespace zsl

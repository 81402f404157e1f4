#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/numeric.hpp"

namespace zsl {

// Class attribute vectors. Global class-index contract: seen classes occupy
// indices 0..num_seen-1, unseen classes num_seen..num_classes()-1, everywhere
// in the library.
struct AttributeMatrix {
    std::size_t dim_a = 0;
    std::size_t num_seen = 0;
    std::size_t num_unseen = 0;
    // One row per class (so each attribute vector is contiguous); row k is the
    // attribute vector of class k.
    Matrix vectors;
    std::vector<std::string> class_names;
    // Column k came from 0-based data row source_rows[k] of the source file;
    // identity for generated/reconstructed matrices. Records the stable
    // seen-first reordering applied on load.
    std::vector<std::size_t> source_rows;

    std::size_t num_classes() const { return num_seen + num_unseen; }
    std::span<const double> attribute(std::size_t k) const { return vectors.row(k); }
};

struct FeatureSet {
    std::size_t dim = 0;
    std::size_t num_classes = 0;  // label space declared by the source
    Matrix features;              // size() x dim
    std::vector<std::uint32_t> labels;

    std::size_t size() const { return labels.size(); }
    std::span<const double> feature(std::size_t i) const { return features.row(i); }
};

// Attribute CSV: header `class,role,a0,a1,...`, then one row per class:
// `name,seen|unseen,v0,v1,...`. Rows may interleave roles; the loader
// reorders seen-first and records the permutation in source_rows.
AttributeMatrix load_attributes(const std::string& path);
void save_attributes(const AttributeMatrix& attrs, const std::string& path);

// Feature binary: magic "ZSFB", then little-endian u32 version=1, u32 n,
// u32 d, u32 num_classes, n*d f32 features row-major, n u32 labels.
FeatureSet load_features(const std::string& path);
void save_features(const FeatureSet& set, const std::string& path);

// Affine per-dimension transform x' = (x - mean) / scale fitted on training
// data (population moments). Dimensions with std < 1e-12 are centered only
// (scale 1).
struct Standardization {
    Vector mean;
    Vector scale;
};

Standardization fit_standardization(const FeatureSet& train);
FeatureSet standardized(const FeatureSet& set, const Standardization& s);

// Synthetic benchmark: binary class attributes, a random linear map into
// feature space, isotropic Gaussian noise around each class prototype.
struct SynthSpec {
    std::size_t dim_a = 16;
    std::size_t dim_d = 32;
    std::size_t num_seen = 12;
    std::size_t num_unseen = 4;
    std::size_t train_per_class = 60;
    std::size_t test_per_class = 20;
    double noise_sigma = 0.3;
    std::uint64_t seed = 7;
};

struct SynthData {
    AttributeMatrix attributes;
    FeatureSet train;        // seen classes only
    FeatureSet test_seen;    // held-out samples of seen classes
    FeatureSet test_unseen;  // unseen classes
    // The d x a mixing matrix that defines class prototypes M·a_k; exposed so
    // tests can run a nearest-prototype oracle against the generated data.
    Matrix ground_truth_map;
};

SynthData synth_generate(const SynthSpec& spec);

}  // namespace zsl

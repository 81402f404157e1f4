#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace zsl {

// Reproducibility contract: every random draw in the library goes through this
// header. std::mt19937_64 has a standard-specified output sequence, and the
// value conversions below are written out by hand, so identical seeds give
// bit-identical results on any conforming platform (the std::*_distribution
// classes make no such guarantee).

// Stream ids used to derive independent substreams from one user seed, so
// e.g. changing the weight-init draw count never perturbs the shuffle order.
inline constexpr std::uint64_t kStreamInit = 0;
inline constexpr std::uint64_t kStreamShuffle = 1;
inline constexpr std::uint64_t kStreamSynth = 2;
inline constexpr std::uint64_t kStreamValSplit = 3;
inline constexpr std::uint64_t kStreamGradCheck = 4;

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Decorrelates small consecutive user seeds and separates the per-purpose
// substreams of a single seed.
inline std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream) {
    return splitmix64(seed ^ splitmix64(0x517cc1b727220a95ull * (stream + 1)));
}

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 1), 53 random mantissa bits.
    double uniform01() { return std::ldexp(static_cast<double>(engine_() >> 11), -53); }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    bool coin() { return (engine_() >> 63) != 0; }

    // Standard normal via Box-Muller; the second deviate of each pair is cached.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = 1.0 - uniform01();  // (0, 1]: keeps log() finite
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * kPi * u2;
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

    // Uniform index in [0, n); rejection sampling avoids modulo bias.
    std::size_t index(std::size_t n) {
        const std::uint64_t span = static_cast<std::uint64_t>(n);
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
        std::uint64_t draw = engine_();
        while (draw >= limit) draw = engine_();
        return static_cast<std::size_t>(draw % span);
    }

  private:
    static constexpr double kPi = 3.141592653589793238462643383279502884;
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

// Fisher-Yates; spelled out so the permutation sequence is pinned down
// (std::shuffle is implementation-defined).
template <typename T>
void shuffle(std::vector<T>& v, Rng& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        const std::size_t j = rng.index(i);
        std::swap(v[i - 1], v[j]);
    }
}

}  // namespace zsl

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "crsketch/errors.hpp"

namespace crsketch {

// All randomness flows through std::mt19937_64 plus the helpers below, none of
// which rely on implementation-defined distributions, so a seed reproduces the
// same stream on every platform.
using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t seed) {
    return Rng(seed);
}

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// Stable per-stream seed derivation: trials, sweep records, and generator
// phases each get an independent stream without consuming the master state.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    return splitmix64(seed ^ splitmix64(stream * 0x9E3779B97F4A7C15ull + 1));
}

// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(Rng& gen) {
    return double(gen() >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, n).
inline std::int64_t uniform_below(Rng& gen, std::int64_t n) {
    return std::min<std::int64_t>(n - 1, std::int64_t(uniform01(gen) * double(n)));
}

// Uniform integer weight in {1, ..., wmax}.
inline int uniform_weight(Rng& gen, int wmax) {
    return 1 + int(uniform_below(gen, wmax));
}

// Standard normal via Box-Muller; consumes exactly two uniforms per call.
inline double gaussian(Rng& gen) {
    const double u1 = 1.0 - uniform01(gen); // in (0, 1], keeps the log finite
    const double u2 = uniform01(gen);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

// Inverse-CDF sampler over a fixed nonnegative weight vector. Zero-weight
// indices are excluded from the CDF and can never be drawn; each draw costs
// one uniform plus a binary search.
class DiscreteSampler {
public:
    explicit DiscreteSampler(const std::vector<double>& weights) {
        cumulative_.reserve(weights.size());
        index_.reserve(weights.size());
        for (std::size_t i = 0; i < weights.size(); ++i) {
            const double w = weights[i];
            if (!(w >= 0.0) || !std::isfinite(w)) {
                throw InvalidParameter("sampling weights must be finite and nonnegative");
            }
            if (w > 0.0) {
                total_ += w;
                index_.push_back(int(i));
                cumulative_.push_back(total_);
            }
        }
        if (index_.empty()) {
            throw DegenerateDistribution("all sampling weights are zero");
        }
    }

    int draw(Rng& gen) const {
        const double x = uniform01(gen) * total_;
        auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), x);
        if (it == cumulative_.end()) {
            --it; // x == total_ cannot occur for uniform01 < 1, but stay in range
        }
        return index_[std::size_t(it - cumulative_.begin())];
    }

    int support_size() const { return int(index_.size()); }

private:
    std::vector<int> index_;
    std::vector<double> cumulative_;
    double total_ = 0.0;
};

} // namespace crsketch

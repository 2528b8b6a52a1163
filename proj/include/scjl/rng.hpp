#pragma once

#include <cstdint>
#include <cstddef>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace scjl {

// =========================================================================
// Deterministic random streams.
//
// All randomness in the library flows through these generators so that a
// (seed, index) pair identifies a stream on every platform.  Column i of a
// matrix sampled with seed S always uses the stream derived from (S, i),
// trial t of a Monte Carlo run uses (S, t), independent of thread count.
// =========================================================================

inline constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

// SplitMix64 output mixer.
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Derived stream seed: SplitMix64 finalizer applied to seed + (index+1)*gamma.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    return mix64(seed + kGoldenGamma * (index + 1));
}

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next() {
        state_ += kGoldenGamma;
        return mix64(state_);
    }

private:
    std::uint64_t state_;
};

// xoshiro256** seeded through SplitMix64.
class Xoshiro256 {
public:
    explicit Xoshiro256(std::uint64_t seed) {
        SplitMix64 sm(seed);
        for (auto& w : s_) w = sm.next();
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Unbiased integer in [0, bound) via multiply-shift with rejection.
    std::uint64_t next_below(std::uint64_t bound) {
        if (bound == 0) throw std::invalid_argument("next_below: bound must be positive");
        unsigned __int128 m = static_cast<unsigned __int128>(next()) * bound;
        auto lo = static_cast<std::uint64_t>(m);
        if (lo < bound) {
            const std::uint64_t threshold = (0 - bound) % bound;
            while (lo < threshold) {
                m = static_cast<unsigned __int128>(next()) * bound;
                lo = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    // Uniform double in [0, 1) with 53 random bits.
    double next_double() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    int next_sign() { return (next() >> 63) ? -1 : 1; }

    // Standard normal via Box-Muller (no caching, two uniforms per draw).
    double next_gaussian() {
        double u;
        do { u = next_double(); } while (u <= 0.0);
        const double v = next_double();
        return std::sqrt(-2.0 * std::log(u)) * std::cos(6.283185307179586476925286766559 * v);
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }
    std::uint64_t s_[4];
};

// Reusable workspace for sampling uniform s-subsets of [0, m).
// Partial Fisher-Yates with swap undo keeps each draw O(s) after a one-time
// O(m) initialisation, and the result is exactly uniform over subsets.
class SubsetSampler {
public:
    void sample(std::uint64_t m, std::uint64_t s, Xoshiro256& rng,
                std::vector<std::uint32_t>& out) {
        if (s > m) throw std::invalid_argument("SubsetSampler: s > m");
        if (pool_.size() != m) {
            pool_.resize(m);
            std::iota(pool_.begin(), pool_.end(), 0u);
        }
        swaps_.clear();
        out.resize(s);
        for (std::uint64_t k = 0; k < s; ++k) {
            const std::uint64_t j = k + rng.next_below(m - k);
            swaps_.push_back({static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(j)});
            std::swap(pool_[k], pool_[j]);
            out[k] = pool_[k];
        }
        for (auto it = swaps_.rbegin(); it != swaps_.rend(); ++it)
            std::swap(pool_[it->first], pool_[it->second]);
    }

private:
    std::vector<std::uint32_t> pool_;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> swaps_;
};

}  // namespace scjl

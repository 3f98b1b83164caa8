#pragma once

#include <cstdint>
#include <random>

namespace ambit {

/// One independent pseudo-random stream. Samplers take a stream by
/// reference; parallel callers derive disjoint streams with substream()
/// so that results do not depend on scheduling.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : engine_(mix(seed, 0x9e3779b97f4a7c15ull)) {}

    /// Deterministic stream for (seed, id); distinct ids give streams that
    /// are independent for all practical purposes.
    static RandomStream substream(std::uint64_t seed, std::uint64_t id) {
        RandomStream s(0);
        s.engine_.seed(mix(seed, mix(id, 0xbf58476d1ce4e5b9ull)));
        return s;
    }

    std::mt19937_64& engine() { return engine_; }

    double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }
    double normal() { return normal_(engine_); }
    double exponential() { return std::exponential_distribution<double>(1.0)(engine_); }

private:
    // splitmix64 finalizer; spreads low-entropy (seed, id) pairs over 64 bits.
    static std::uint64_t mix(std::uint64_t x, std::uint64_t salt) {
        x += salt;
        x ^= x >> 30;
        x *= 0xbf58476d1ce4e5b9ull;
        x ^= x >> 27;
        x *= 0x94d049bb133111ebull;
        x ^= x >> 31;
        return x;
    }

    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace ambit

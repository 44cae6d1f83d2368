#pragma once

#include <cmath>
#include <cstdint>

namespace sepcert {

/// Counter-based splittable generator: every draw hashes (seed, stream,
/// counter) through splitmix64, so streams derived from the same seed are
/// independent and results are bit-identical across platforms and runs.
class Rng {
public:
    explicit Rng(uint64_t seed, uint64_t stream = 0)
        : seed_(seed), stream_(stream), counter_(0), have_cached_(false), cached_(0.0) {}

    /// Child generator for an independent substream (e.g. one per state).
    Rng split(uint64_t substream) const {
        return Rng(seed_, stream_ * 0x9e3779b97f4a7c15ULL + substream + 1);
    }

    uint64_t next_u64() {
        uint64_t z = seed_ + 0x9e3779b97f4a7c15ULL * (counter_++ + 1);
        z ^= stream_ + 0xbf58476d1ce4e5b9ULL;
        return mix(mix(z) + stream_);
    }

    /// Uniform in [0, 1).
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Standard normal via Box-Muller.
    double normal() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        cached_ = r * std::sin(a);
        have_cached_ = true;
        return r * std::cos(a);
    }

private:
    static uint64_t mix(uint64_t z) {
        z ^= z >> 30;
        z *= 0xbf58476d1ce4e5b9ULL;
        z ^= z >> 27;
        z *= 0x94d049bb133111ebULL;
        z ^= z >> 31;
        return z;
    }

    uint64_t seed_;
    uint64_t stream_;
    uint64_t counter_;
    bool have_cached_;
    double cached_;
};

}  // namespace sepcert

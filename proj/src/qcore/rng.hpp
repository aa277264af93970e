#pragma once

#include <cmath>
#include <cstdint>

namespace qlab {

// Counter-based generator: output i of stream k is a pure function of
// (seed, k, i), so parallel shots can draw from independent streams and any
// run is reproducible from the root seed alone.
class Rng {
  public:
    Rng() : key_(0) {}
    explicit Rng(uint64_t seed) : key_(mix(seed ^ 0x5851f42d4c957f2dULL)) {}

    // Independent child stream. Derivation is one-way, so streams built from
    // distinct indices never collide in practice.
    Rng stream(uint64_t index) const {
        Rng child;
        child.key_ = mix(key_ ^ mix(index + 0x9e3779b97f4a7c15ULL));
        return child;
    }

    uint64_t next_u64() {
        counter_ += 0x9e3779b97f4a7c15ULL;
        return mix(counter_ ^ key_);
    }

    // uniform in [0, 1), 53-bit resolution
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    bool next_bool(double p_true) { return next_double() < p_true; }

    int next_bit() { return static_cast<int>(next_u64() >> 63); }

    // unbiased integer in [0, n)
    uint64_t next_below(uint64_t n) {
        uint64_t threshold = (0 - n) % n;
        for (;;) {
            uint64_t r = next_u64();
            if (r >= threshold) return r % n;
        }
    }

    double next_gaussian() {
        double u1 = 1.0 - next_double();
        double u2 = next_double();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    }

  private:
    // SplitMix64 finalizer
    static uint64_t mix(uint64_t z) {
        z ^= z >> 30;
        z *= 0xbf58476d1ce4e5b9ULL;
        z ^= z >> 27;
        z *= 0x94d049bb133111ebULL;
        z ^= z >> 31;
        return z;
    }

    uint64_t key_;
    uint64_t counter_ = 0;
};

}  // namespace qlab

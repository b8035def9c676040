#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>

namespace rmt {

// SplitMix64: counter-based generator. Output i is a pure function of
// (state0 + i*GAMMA), so streams derived from distinct keys never share state.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
};

inline std::uint64_t mix64(std::uint64_t x) {
    return SplitMix64(x).next();
}

// Derives a child stream key from a master seed and an index path, e.g.
// derive_stream(master, {dist_index, n, trial}). Children are independent
// streams: the whole experiment re-keys deterministically from one seed.
inline std::uint64_t derive_stream(std::uint64_t master,
                                   std::initializer_list<std::uint64_t> path) {
    std::uint64_t key = mix64(master ^ 0xA0761D6478BD642FULL);
    for (std::uint64_t p : path) {
        key = mix64(key ^ mix64(p + 0xE7037ED1A0B428DBULL));
    }
    return key;
}

// Deterministic stream of uniforms/normals keyed by a 64-bit value.
class RandomStream {
  public:
    explicit RandomStream(std::uint64_t key) : gen_(mix64(key)) {}

    std::uint64_t next_u64() { return gen_.next(); }

    // [0, 1) with 53-bit resolution
    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // (0, 1]; safe under log() and negative powers
    double uniform_open01() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    // standard normal via Box-Muller; pairs are consumed in order
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform_open01();
        const double u2 = uniform01();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 6.283185307179586476925286766559 * u2;
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return radius * std::cos(angle);
    }

    // uniform integer in [0, bound)
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t reject = (0ULL - bound) % bound;
        std::uint64_t x;
        do {
            x = next_u64();
        } while (x < reject);
        return x % bound;
    }

    bool coin() { return (next_u64() >> 63) != 0; }

  private:
    SplitMix64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace rmt

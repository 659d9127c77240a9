#pragma once

#include <cstdint>

namespace cmedac {

// splitmix64 stream. Self-contained so that seeded runs reproduce bit-for-bit
// on any platform or standard library.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ull;
        uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // uniform in [0, bound), bound > 0
    uint64_t below(uint64_t bound) {
        return static_cast<uint64_t>(
            (static_cast<unsigned __int128>(next()) * bound) >> 64);
    }

    bool chance(double p) {
        return static_cast<double>(next() >> 11) * 0x1.0p-53 < p;
    }

    // Independent substream, stable across platforms. Used to give each
    // campaign run / task its own seed.
    static uint64_t derive(uint64_t seed, uint64_t stream) {
        Rng r(seed ^ (0x9e3779b97f4a7c15ull * (stream + 1)));
        return r.next();
    }

private:
    uint64_t state_;
};

}  // namespace cmedac

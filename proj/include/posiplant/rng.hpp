#pragma once

#include <cstdint>

namespace posiplant {

// splitmix64 finalizer. Pure function, used for seed expansion and
// child-stream derivation.
inline std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
}

// xoshiro256++ with splitmix64 seeding. The sequence depends only on the
// seed, never on the platform: all arithmetic is fixed-width and the
// bounded/real helpers below avoid the implementation-defined std::
// distributions. Instances generated with a given seed are therefore
// byte-reproducible everywhere.
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        // splitmix64 stream to fill the state (standard seeding recipe)
        std::uint64_t sm = seed;
        for (auto& word : s_) {
            sm += 0x9e3779b97f4a7c15ULL;
            word = mix64(sm);
        }
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform integer in [0, bound). Lemire's unbiased multiply-shift.
    std::uint64_t below(std::uint64_t bound) {
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

    // Uniform double in [0, 1), 53 significant bits.
    double uniform01() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    // Child seed for instance/read fan-out: deterministic in (master, index)
    // and decorrelated between indices.
    static std::uint64_t derive(std::uint64_t master, std::uint64_t index) {
        return mix64(master ^ mix64(index + 0x9e3779b97f4a7c15ULL));
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t s_[4];
};

} // namespace posiplant

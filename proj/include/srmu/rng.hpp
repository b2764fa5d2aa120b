#pragma once

// Seeded random source with named substreams.
//
// The generator is xoshiro256** seeded through splitmix64, with an explicit
// uniform-double conversion, so the same seed produces the same stream on any
// platform and compiler. Named substreams let a trial keep its dynamics,
// sampling, noise, and codebook draws independent: adding a consumer to one
// stream never perturbs the others.

#include <array>
#include <cstdint>
#include <string_view>

namespace srmu {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace detail

class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& w : state_) w = detail::splitmix64(sm);
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform in [0, 1) with 53 bits of precision.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, n). Rejection sampling, unbiased.
    std::uint64_t uniform_index(std::uint64_t n) {
        const std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            const std::uint64_t r = next();
            if (r >= threshold) return r % n;
        }
    }

    // +1 or -1 with equal probability.
    int uniform_sign() { return (next() & 1) ? 1 : -1; }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::array<std::uint64_t, 4> state_{};
};

// Deterministic seed for a named substream of a master seed.
inline std::uint64_t substream_seed(std::uint64_t master, std::string_view name) {
    std::uint64_t x = master ^ detail::fnv1a(name);
    return detail::splitmix64(x);
}

// Deterministic per-trial seed derived from the master seed.
inline std::uint64_t trial_seed(std::uint64_t master, std::uint64_t trial_index) {
    std::uint64_t x = master ^ (0xa0761d6478bd642fULL + trial_index * 0xe7037ed1a0b428dbULL);
    return detail::splitmix64(x);
}

}  // namespace srmu

#pragma once

#include <cstdint>

namespace netwalk {

// splitmix64 finalizer; bijective avalanche over 64 bits.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Deterministic per-task seed from (master, cell, network, walk). Each index is
// folded through the avalanche so distinct tuples land on distinct streams.
constexpr std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t cell_index,
                                    std::uint64_t network_index, std::uint64_t walk_index) {
    std::uint64_t s = mix64(master_seed);
    s = mix64(s ^ (cell_index + 0x8000000000000001ULL));
    s = mix64(s ^ (network_index + 0x4000000000000003ULL));
    s = mix64(s ^ (walk_index + 0x2000000000000005ULL));
    return s;
}

// xoshiro256** by Blackman & Vigna. Self-contained so that walk sequences are
// reproducible across standard libraries and platforms.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) {
        // expand the seed through splitmix64, the recommended seeding procedure
        std::uint64_t sm = seed;
        for (auto& word : state_) {
            sm += 0x9e3779b97f4a7c15ULL;
            std::uint64_t z = sm;
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
            word = z ^ (z >> 31);
        }
    }

    std::uint64_t next_u64() {
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

    // uniform in [0, 1), 53-bit resolution
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // uniform in [0, n), unbiased (Lemire's method with rejection)
    std::uint64_t next_below(std::uint64_t n) {
        std::uint64_t x = next_u64();
        unsigned __int128 m = static_cast<unsigned __int128>(x) * n;
        auto lo = static_cast<std::uint64_t>(m);
        if (lo < n) {
            const std::uint64_t threshold = (0 - n) % n;
            while (lo < threshold) {
                x = next_u64();
                m = static_cast<unsigned __int128>(x) * n;
                lo = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

  private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }
    std::uint64_t state_[4];
};

} // namespace netwalk

#pragma once

#include <cstdint>
#include <random>

#include "hault/group.hpp"

namespace hault {

// Single injectable randomness source. Deterministic when seeded, so tests
// and reproduced scenarios draw identical streams; not a CSPRNG, which is in
// line with the rest of this research-grade artifact.
class Rng {
public:
    Rng() : engine_(std::random_device{}()) {}
    explicit Rng(uint64_t seed) : engine_(seed) {}

    uint64_t next_u64() { return engine_(); }

    // uniform in [lo, hi] inclusive
    uint64_t uniform(uint64_t lo, uint64_t hi) {
        return std::uniform_int_distribution<uint64_t>(lo, hi)(engine_);
    }

    // uniform in [0, r) by rejection on bit_length(r)-bit draws
    Scalar scalar(const Group& g) {
        unsigned bits = bit_length(g.order());
        while (true) {
            Int v = 0;
            for (unsigned got = 0; got < bits; got += 64) {
                v <<= 64;
                v += Int(next_u64());
            }
            v >>= (64 - bits % 64) % 64;
            if (v < g.order()) return Scalar{std::move(v)};
        }
    }

    // uniform in [1, r); encryption randomness is sampled here so the
    // transparent k = 0 only ever appears by explicit request
    Scalar nonzero_scalar(const Group& g) {
        while (true) {
            Scalar s = scalar(g);
            if (s.v != 0) return s;
        }
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace hault

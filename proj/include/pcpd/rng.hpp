#pragma once

#include <cstdint>

namespace pcpd {

// Counter-based deterministic generator (splitmix64 core).  Every protocol
// draw consumes a fixed number of counter steps, so transcripts are replayable
// from (seed) alone and independent streams can be forked with `fork`.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed), ctr_(0) {}

    std::uint64_t next_u64() { return mix(seed_ + 0x9e3779b97f4a7c15ull * ++ctr_); }

    // Uniform element of [0, p) by rejection sampling.
    std::uint64_t field(std::uint64_t p) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % p;
        for (;;) {
            std::uint64_t v = next_u64();
            if (v < limit) return v % p;
        }
    }

    // Uniform element of [0, n), rejection sampled.
    std::uint64_t index(std::uint64_t n) { return field(n); }

    // Derive an independent stream keyed by (current seed, label).
    Rng fork(std::uint64_t label) const { return Rng(mix(seed_ ^ mix(label + 0x6a09e667f3bcc909ull))); }

    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ull;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t seed_;
    std::uint64_t ctr_;
};

} // namespace pcpd

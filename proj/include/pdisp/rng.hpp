#pragma once

#include <cstdint>
#include <random>

namespace pdisp {

// Seeded random stream. Distributions are hand-rolled on top of the raw
// 64-bit output so sequences are reproducible across standard libraries
// (std::uniform_*_distribution is implementation-defined).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 1).
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    // Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform integer in [lo, hi] inclusive. Rejection-free modulo bias is
    // irrelevant at the ranges used here (|hi-lo| << 2^32).
    int uniform_int(int lo, int hi) {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<int>(engine_() % span);
    }

    // Independent child stream; used to give each solver run its own seed.
    Rng split() { return Rng(engine_()); }

private:
    std::mt19937_64 engine_;
};

}  // namespace pdisp

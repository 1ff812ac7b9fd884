#pragma once
#include <cstdint>

namespace hsr {

// SplitMix64; used to expand seed material into engine state.
struct SplitMix64 {
    std::uint64_t state{0};

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
};

// xoshiro256++ with a fully pinned update rule, so a given seed produces the
// same stream on every platform and compiler. std::uniform_real_distribution
// is implementation-defined; the uniform helpers below are not.
class Rng {
public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t seed) {
        SplitMix64 sm{seed};
        for (auto& word : state_) word = sm.next();
    }

    std::uint64_t operator()() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    static constexpr std::uint64_t min() { return 0; }
    static constexpr std::uint64_t max() { return ~std::uint64_t{0}; }

    // Uniform over [0, 1) with 53-bit resolution.
    double uniform01() { return static_cast<double>(operator()() >> 11) * 0x1.0p-53; }

    // Uniform over the half-open interval [lo, hi).
    double uniform(double lo, double hi) { return lo + uniform01() * (hi - lo); }

    // Fair coin.
    bool coin() { return (operator()() >> 63) != 0; }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::uint64_t state_[4];
};

// Names one trial's private random stream.
struct TrialSeed {
    std::uint64_t master_seed{0};
    std::uint64_t trial_index{0};
};

// Each (master_seed, trial_index) pair owns an independent stream, so trials
// may execute on any thread in any order and still draw identical samples.
inline Rng make_stream(TrialSeed seed) {
    SplitMix64 sm{seed.master_seed};
    const std::uint64_t base = sm.next();
    sm.state = base + 0x9e3779b97f4a7c15ULL * seed.trial_index;
    return Rng(sm.next());
}

}  // namespace hsr

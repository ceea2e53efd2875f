#pragma once

#include <cstdint>
#include <span>

namespace swcert {

/// xoshiro256** seeded via splitmix64. Self-contained so that streams are
/// bit-identical across platforms and standard libraries (the distributions
/// in <random> are implementation-defined).
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t next_u64();

    /// Uniform integer in [lo, hi], unbiased via rejection sampling.
    int uniform_int(int lo, int hi);

    /// Uniform double in [lo, hi) from the top 53 bits.
    double uniform_real(double lo, double hi);

    /// Uniformly chosen element of a nonempty list.
    int pick(std::span<const int> items);

    /// Stream-splitting helper: decorrelated child seed for (seed, index).
    static std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

private:
    std::uint64_t s_[4];
};

}  // namespace swcert

// Copyright 2026 The o2bp Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <limits>

namespace o2bp {

/// SplitMix64; used only to expand keys into engine state.
class SplitMix64
{
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t operator()()
    {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

  private:
    std::uint64_t state_;
};

/// xoshiro256++ (Blackman & Vigna). Satisfies UniformRandomBitGenerator.
class Xoshiro256pp
{
  public:
    using result_type = std::uint64_t;

    explicit Xoshiro256pp(std::uint64_t seed)
    {
        SplitMix64 sm(seed);
        for (auto& w : s_)
            w = sm();
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()()
    {
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

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::uint64_t s_[4];
};

using Rng = Xoshiro256pp;

/// Independent stream keyed by (seed, index, lane). The same key always
/// yields the same stream; distinct keys are decorrelated by two rounds of
/// the SplitMix64 finalizer. `lane` separates streams that share a path
/// index (e.g. the reference and target simulations of one estimator).
inline Rng path_stream(std::uint64_t seed, std::uint64_t index, std::uint64_t lane = 0)
{
    SplitMix64 mix_seed(seed ^ (0xd1b54a32d192ed03ull * (lane + 1)));
    const std::uint64_t base = mix_seed();
    SplitMix64 mix_index(base + 0x9e3779b97f4a7c15ull * (index + 1));
    return Rng(mix_index());
}

} // namespace o2bp

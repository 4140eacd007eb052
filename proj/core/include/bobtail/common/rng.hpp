#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace bobtail {

/// The single generator used by every simulation in the library.
///
/// Trials never share generator state. Each trial draws from its own stream,
/// seeded by `stream_seed(seed, trial)`, so results do not depend on the order
/// in which trials run or on how they are split across worker threads.
using Rng = std::mt19937_64;

/// SplitMix64 finalizer (Steele, Lea & Flood). Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Seed of the per-trial stream: mix64(seed XOR mix64(trial)).
constexpr std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t trial) noexcept
{
    return mix64(seed ^ mix64(trial));
}

inline Rng trial_rng(std::uint64_t seed, std::uint64_t trial)
{
    return Rng{stream_seed(seed, trial)};
}

/// Seed drawn from std::random_device, for runs where the caller gave none.
std::uint64_t entropy_seed();

/// Uniform double on [0, 1) with 53 random bits.
inline double uniform01(Rng& rng) noexcept
{
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Exponential variate with the given mean (scale).
inline double exponential(Rng& rng, double scale) noexcept
{
    // 1 - u lies in (0, 1], so the log is finite.
    return -scale * std::log1p(-uniform01(rng));
}

} // namespace bobtail

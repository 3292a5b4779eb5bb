#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace ctdg {

/// The engine is fully specified by the standard, and every distribution we
/// draw from comes from Boost.Random, so streams are identical across
/// standard libraries and machines.
using Rng = std::mt19937_64;

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Independent stream seed for (seed, stream, index). Counter-based, so any
/// consumer can derive the stream of item `index` without touching others.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index = 0);

inline Rng make_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index = 0) {
    return Rng(derive_seed(seed, stream, index));
}

/// Stream tags keep the sub-generators of one pipeline stage apart.
namespace streams {
inline constexpr std::uint64_t kStaticGraph = 1;
inline constexpr std::uint64_t kClasses = 2;
inline constexpr std::uint64_t kTimeline = 3;
inline constexpr std::uint64_t kInjection = 4;
}  // namespace streams

/// Uniform in [lo, hi).
double uniform_real(Rng& rng, double lo, double hi);
/// Uniform in {0, ..., n-1}; n must be positive.
std::size_t uniform_index(Rng& rng, std::size_t n);
double standard_normal(Rng& rng);
long poisson(Rng& rng, double mean);
double lognormal(Rng& rng, double log_mean, double log_sd);

}  // namespace ctdg

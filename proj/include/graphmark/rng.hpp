#pragma once

#include <cstdint>
#include <random>

namespace graphmark {

using Engine = std::mt19937_64;

/// SplitMix64 finalizer applied to (master, stream): the seed of replicate
/// `stream` under a master seed.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

// Samplers written out by hand so draws are the same on every standard
// library (the std distributions are implementation-defined).

/// Uniform on [0, 1) with 53 random bits.
double uniform01(Engine& eng);

/// Uniform integer in [0, n); n > 0.
std::uint64_t uniform_below(Engine& eng, std::uint64_t n);

/// Standard normal (Marsaglia polar method, one value per call).
double standard_normal(Engine& eng);

/// Poisson(mean) for mean >= 0.
std::uint64_t poisson(Engine& eng, double mean);

}  // namespace graphmark

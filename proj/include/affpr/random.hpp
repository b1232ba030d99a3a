#pragma once

#include <cstdint>
#include <random>

#include "affpr/types.hpp"

namespace affpr {

using Rng = std::mt19937_64;

/// Seed used by tests and the CLI unless SEED is set in the environment.
inline constexpr std::uint64_t kDefaultSeed = 0x5eed2024ULL;

/// kDefaultSeed, or the value of the SEED environment variable when it parses.
std::uint64_t seed_from_environment();

/// Entries with independent standard normal real and imaginary parts.
ComplexVector random_vector(const IndexSet& index, Rng& rng);
ComplexMatrix random_matrix(const IndexSet& rows, const IndexSet& cols, Rng& rng);
/// Real standard normal entries.
ComplexVector random_real_vector(const IndexSet& index, Rng& rng);

/// Random complex vector on {0..n-1} with zero sum.
ComplexVector random_h0_vector(int n, Rng& rng);
/// Random real vector on {0..n-1} with zero sum.
ComplexVector random_real_h0_vector(int n, Rng& rng);

/// Uniform phase exp(i theta).
Complex random_phase(Rng& rng);

}  // namespace affpr

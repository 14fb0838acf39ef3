#pragma once

// Seeded random streams and samplers for operator arguments.
//
// Draws are built directly on the 64-bit output of std::mt19937_64, whose
// sequence is fixed by the standard. The std:: distributions are avoided
// because their output is implementation-defined, which would make runs
// differ between standard libraries.

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "tspga/operators.hpp"

namespace tspga {

/// SplitMix64 finalizer; used to decorrelate derived seeds.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Seed of child stream `index` of `seed`. Pure function of its inputs.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept;

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(mix64(seed)) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform in [0,1) with 53 bits of resolution.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, bound). bound must be > 0.
    std::uint64_t below(std::uint64_t bound);

    bool bernoulli(double p) { return uniform01() < p; }

private:
    std::mt19937_64 engine_;
};

/// Cut pair sampled uniformly over {(a, b) : 0 <= a <= b < n}.
CutPoints random_cuts(Rng& rng, std::size_t n);

/// In-place Fisher-Yates shuffle.
void shuffle(std::span<City> genes, Rng& rng);

/// Uniformly random permutation of 0..n-1.
std::vector<City> random_permutation(std::size_t n, Rng& rng);

std::vector<bool> random_mask(Rng& rng, std::size_t n);
std::vector<double> random_draws(Rng& rng, std::size_t n);

}  // namespace tspga

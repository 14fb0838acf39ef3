#pragma once

// Exhaustive TSP solver for small instances, used as ground truth.

#include <cstddef>
#include <cstdint>

#include "tspga/tsp.hpp"

namespace tspga {

struct ExactResult {
    Tour optimal_tour;
    double optimal_length = 0.0;
    std::uint64_t permutations_examined = 0;
};

enum class Enumeration {
    SymmetryReduced,  ///< city 0 fixed first, one orientation per cycle
    Full,             ///< every one of the n! orders
};

inline constexpr std::size_t kDefaultExactCap = 10;

/// Minimum-length tour by enumeration. Throws std::invalid_argument when the
/// instance has more than `max_n` cities. Ties keep the first tour found in
/// lexicographic order.
ExactResult brute_force_optimum(const TspInstance& instance, std::size_t max_n = kDefaultExactCap,
                                Enumeration mode = Enumeration::SymmetryReduced);

}  // namespace tspga

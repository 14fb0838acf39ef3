#pragma once

// Generational GA: initialization, roulette/crossover/RSM pipeline,
// single-elite insertion, and seeded runs.

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "tspga/operators.hpp"
#include "tspga/rng.hpp"
#include "tspga/tsp.hpp"

namespace tspga {

enum class InitStrategy { Random, MutateFirst, HeuristicNn };

std::string_view to_string(InitStrategy strategy);
InitStrategy parse_init_strategy(std::string_view name);

struct GaParams {
    std::size_t population_size = 100;
    CrossoverSpec crossover{};
    double crossover_prob = 0.9;
    MutationKind mutation = MutationKind::Rsm;
    double mutation_prob = 0.1;
    std::size_t iterations = 5000;
    InitStrategy init = InitStrategy::Random;
    std::uint64_t seed = 1;

    /// Throws std::invalid_argument on out-of-domain values.
    void validate() const;

    friend bool operator==(const GaParams&, const GaParams&) = default;
};

struct Population {
    std::vector<Tour> members;  ///< every member carries its evaluated length
    std::size_t generation = 0;

    /// Index of the shortest member (first one on ties).
    std::size_t best_index() const;
    double best_length() const { return *members[best_index()].length; }

    friend bool operator==(const Population&, const Population&) = default;
};

struct RunRecord {
    Tour best_tour;
    double best_length = 0.0;
    std::vector<double> trace;  ///< trace[g] = best length after g generations
    std::uint64_t seed = 0;
    std::size_t generations_run = 0;
    std::chrono::duration<double> wall_time{0.0};

    friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

/// Independent random streams of one run, all derived from a single seed.
///
/// Stream i is seeded with derive_seed(seed, i) in the order of the members
/// below, so each consumer sees the same draws no matter how often the
/// others are used.
struct RunStreams {
    Rng init;
    Rng selection;
    Rng crossover;  ///< cut points, masks, UPMX draws
    Rng mutation;   ///< RSM cut points
    Rng coin;       ///< Px / Pm decisions

    static RunStreams from_seed(std::uint64_t seed);
};

/// Builds `size` evaluated members. `rng` should be a run's init stream.
Population init_population(const TspInstance& instance, InitStrategy strategy, std::size_t size, Rng& rng);

/// Greedy nearest-neighbour tour from `start`; ties go to the lower index.
std::vector<City> nearest_neighbor_tour(const TspInstance& instance, City start = 0);

/// Draws the random arguments for `spec` from `rng` and applies it.
Children apply_crossover(const CrossoverSpec& spec, std::span<const City> p1, std::span<const City> p2, Rng& rng);

/// One generation: elite copy, then roulette-selected pairs varied by
/// crossover (prob Px) and RSM (prob Pm per child) until the population is full.
Population evolve_generation(const Population& population, const GaParams& params, const TspInstance& instance,
                             RunStreams& streams);

/// Full run seeded from params.seed.
RunRecord run_ga(const TspInstance& instance, const GaParams& params);

/// Run from a supplied generation-0 population; the evolution streams are
/// still derived from params.seed.
RunRecord run_ga(const TspInstance& instance, const GaParams& params, Population initial);

}  // namespace tspga

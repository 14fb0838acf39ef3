#pragma once

// Permutation crossovers, reverse-sequence mutation, and roulette selection.
//
// Every operator is a pure function: all randomness (cut points, masks,
// per-position draws, selection draws) is passed in explicitly. The
// samplers that turn a generator into those arguments live in rng.hpp.
//
// Cut points are 0-based and inclusive here: {first, last} selects
// positions first..last of the tour.

#include <cstddef>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "tspga/tsp.hpp"

namespace tspga {

enum class CrossoverKind { Uxo, Cx, Pmx, Upmx, Nwox, Ox };

inline constexpr CrossoverKind kAllCrossovers[] = {
    CrossoverKind::Uxo, CrossoverKind::Cx,   CrossoverKind::Pmx,
    CrossoverKind::Upmx, CrossoverKind::Nwox, CrossoverKind::Ox,
};

std::string_view to_string(CrossoverKind kind);
CrossoverKind parse_crossover_kind(std::string_view name);

/// A crossover kind plus its operator-specific parameters.
///
/// `upmx_p` is the UPMX exchange threshold: position i is exchanged when its
/// draw q satisfies q >= p, so the per-position exchange rate is 1 - p.
struct CrossoverSpec {
    CrossoverKind kind = CrossoverKind::Ox;
    double upmx_p = 2.0 / 3.0;

    void validate() const;
    friend bool operator==(const CrossoverSpec&, const CrossoverSpec&) = default;
};

enum class MutationKind { Rsm };

std::string_view to_string(MutationKind kind);
MutationKind parse_mutation_kind(std::string_view name);

struct CutPoints {
    std::size_t first = 0;
    std::size_t last = 0;

    friend bool operator==(const CutPoints&, const CutPoints&) = default;
};

/// Throws std::invalid_argument unless first <= last < n.
void check_cuts(CutPoints cuts, std::size_t n);

using Genes = std::vector<City>;
using Children = std::pair<Genes, Genes>;

/// Uniform crossover with order repair: child1 keeps p1's gene where mask is
/// true; the remaining positions receive the genes child1 still lacks, in the
/// order they occur in p2. child2 mirrors this with the parents swapped.
Children uniform_crossover(std::span<const City> p1, std::span<const City> p2, const std::vector<bool>& mask);

/// Cycle crossover. The cycle through position 0 is inherited positionally
/// from the same-side parent; every other position comes from the other parent.
Children cx_crossover(std::span<const City> p1, std::span<const City> p2);

/// Partially-mapped crossover via position-tracking exchanges: for each
/// position in the segment, child1 swaps p2's gene into place and child2
/// swaps p1's gene into place.
Children pmx_crossover(std::span<const City> p1, std::span<const City> p2, CutPoints cuts);

/// Uniform PMX: the PMX exchange is applied at every position i with
/// draws[i] >= p. `draws` must hold one value per position.
Children upmx_crossover(std::span<const City> p1, std::span<const City> p2, double p,
                        std::span<const double> draws);

/// Non-wrapping ordered crossover. child1 drops the genes of p2's segment
/// from p1, compacts the survivors without wrapping around the segment, and
/// places p2's segment at the cut positions.
Children nwox_crossover(std::span<const City> p1, std::span<const City> p2, CutPoints cuts);

/// Ordered crossover. child1 keeps p1 outside the cuts; the segment is filled
/// with the genes missing from it in the order they appear in p2.
Children ox_crossover(std::span<const City> p1, std::span<const City> p2, CutPoints cuts);

/// Reverse sequence mutation: reverses positions first..last in place.
void rsm_mutate(std::span<City> genes, CutPoints cuts);

/// Copying form of rsm_mutate.
Genes rsm_mutation(std::span<const City> genes, CutPoints cuts);

/// Probability distribution over population members, with cumulative sums
/// cached for roulette draws.
class SelectionWeights {
public:
    /// Accepts any distribution with entries in [0,1] summing to 1 within 1e-12.
    static SelectionWeights from_probabilities(std::vector<double> probabilities);
    static SelectionWeights uniform(std::size_t n);

    std::span<const double> probabilities() const noexcept { return probabilities_; }
    std::span<const double> cumulative() const noexcept { return cumulative_; }
    std::size_t size() const noexcept { return probabilities_.size(); }

private:
    explicit SelectionWeights(std::vector<double> probabilities);
    friend SelectionWeights roulette_weights(std::span<const double> fitness);

    std::vector<double> probabilities_;
    std::vector<double> cumulative_;
};

/// Inverted fitness-proportionate weights for a minimization problem:
/// w_i = (1 - f_i / sum f) / (N - 1). Requires N >= 2 and f_i > 0.
SelectionWeights roulette_weights(std::span<const double> fitness);

/// Index k whose cumulative interval [c_{k-1}, c_k) contains u, u in [0,1).
std::size_t roulette_select(const SelectionWeights& weights, double u);

}  // namespace tspga

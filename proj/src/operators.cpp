#include "tspga/operators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace tspga {

std::string_view to_string(CrossoverKind kind) {
    switch (kind) {
        case CrossoverKind::Uxo: return "uxo";
        case CrossoverKind::Cx: return "cx";
        case CrossoverKind::Pmx: return "pmx";
        case CrossoverKind::Upmx: return "upmx";
        case CrossoverKind::Nwox: return "nwox";
        case CrossoverKind::Ox: return "ox";
    }
    return "?";
}

CrossoverKind parse_crossover_kind(std::string_view name) {
    for (const auto kind : kAllCrossovers) {
        if (to_string(kind) == name) return kind;
    }
    throw std::invalid_argument("unknown crossover '" + std::string(name) +
                                "' (expected uxo|cx|pmx|upmx|nwox|ox)");
}

void CrossoverSpec::validate() const {
    if (!(upmx_p >= 0.0 && upmx_p <= 1.0)) throw std::invalid_argument("upmx_p must lie in [0,1]");
}

std::string_view to_string(MutationKind) { return "rsm"; }

MutationKind parse_mutation_kind(std::string_view name) {
    if (name == "rsm") return MutationKind::Rsm;
    throw std::invalid_argument("unknown mutation '" + std::string(name) + "' (expected rsm)");
}

void check_cuts(CutPoints cuts, std::size_t n) {
    if (cuts.first > cuts.last || cuts.last >= n) {
        throw std::invalid_argument("invalid cut points [" + std::to_string(cuts.first) + ", " +
                                    std::to_string(cuts.last) + "] for length " + std::to_string(n));
    }
}

namespace {

void check_parents(std::span<const City> p1, std::span<const City> p2) {
    if (p1.size() != p2.size()) {
        throw std::invalid_argument("parent length mismatch: " + std::to_string(p1.size()) + " vs " +
                                    std::to_string(p2.size()));
    }
}

// position_of[gene] for a permutation of 0..n-1.
std::vector<std::size_t> positions(std::span<const City> genes) {
    std::vector<std::size_t> pos(genes.size());
    for (std::size_t i = 0; i < genes.size(); ++i) pos[static_cast<std::size_t>(genes[i])] = i;
    return pos;
}

// Puts `gene` at position i of `child` by swapping it with whatever occupies i.
void exchange_into(Genes& child, std::vector<std::size_t>& pos, std::size_t i, City gene) {
    const std::size_t from = pos[static_cast<std::size_t>(gene)];
    const City displaced = child[i];
    child[from] = displaced;
    child[i] = gene;
    pos[static_cast<std::size_t>(displaced)] = from;
    pos[static_cast<std::size_t>(gene)] = i;
}

// Keeps `keeper` where `keep[i]`; fills the other positions, left to right,
// with the genes not yet kept, in the order they appear in `donor`.
Genes fill_by_donor_order(std::span<const City> keeper, std::span<const City> donor,
                          const std::vector<bool>& keep) {
    const std::size_t n = keeper.size();
    Genes child(n);
    std::vector<bool> used(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        if (keep[i]) {
            child[i] = keeper[i];
            used[static_cast<std::size_t>(keeper[i])] = true;
        }
    }
    std::size_t next = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (keep[i]) continue;
        while (used[static_cast<std::size_t>(donor[next])]) ++next;
        child[i] = donor[next++];
    }
    return child;
}

Genes nwox_child(std::span<const City> base, std::span<const City> donor, CutPoints cuts) {
    const std::size_t n = base.size();
    std::vector<bool> hole(n, false);
    for (std::size_t i = cuts.first; i <= cuts.last; ++i) hole[static_cast<std::size_t>(donor[i])] = true;

    Genes child(n);
    std::size_t out = 0;
    for (const City g : base) {
        if (hole[static_cast<std::size_t>(g)]) continue;
        if (out == cuts.first) out = cuts.last + 1;
        child[out++] = g;
    }
    std::copy(donor.begin() + static_cast<std::ptrdiff_t>(cuts.first),
              donor.begin() + static_cast<std::ptrdiff_t>(cuts.last) + 1,
              child.begin() + static_cast<std::ptrdiff_t>(cuts.first));
    return child;
}

}  // namespace

Children uniform_crossover(std::span<const City> p1, std::span<const City> p2, const std::vector<bool>& mask) {
    check_parents(p1, p2);
    if (mask.size() != p1.size()) throw std::invalid_argument("mask length differs from parent length");
    return {fill_by_donor_order(p1, p2, mask), fill_by_donor_order(p2, p1, mask)};
}

Children cx_crossover(std::span<const City> p1, std::span<const City> p2) {
    check_parents(p1, p2);
    const std::size_t n = p1.size();
    Genes c1(p2.begin(), p2.end());
    Genes c2(p1.begin(), p1.end());
    if (n == 0) return {c1, c2};

    const auto pos1 = positions(p1);
    std::size_t i = 0;
    std::vector<bool> in_cycle(n, false);
    while (!in_cycle[i]) {
        in_cycle[i] = true;
        c1[i] = p1[i];
        c2[i] = p2[i];
        i = pos1[static_cast<std::size_t>(p2[i])];
    }
    return {c1, c2};
}

Children pmx_crossover(std::span<const City> p1, std::span<const City> p2, CutPoints cuts) {
    check_parents(p1, p2);
    check_cuts(cuts, p1.size());
    Genes c1(p1.begin(), p1.end());
    Genes c2(p2.begin(), p2.end());
    auto pos1 = positions(c1);
    auto pos2 = positions(c2);
    for (std::size_t i = cuts.first; i <= cuts.last; ++i) {
        exchange_into(c1, pos1, i, p2[i]);
        exchange_into(c2, pos2, i, p1[i]);
    }
    return {c1, c2};
}

Children upmx_crossover(std::span<const City> p1, std::span<const City> p2, double p,
                        std::span<const double> draws) {
    check_parents(p1, p2);
    if (draws.size() != p1.size()) throw std::invalid_argument("UPMX needs one draw per position");
    Genes c1(p1.begin(), p1.end());
    Genes c2(p2.begin(), p2.end());
    auto pos1 = positions(c1);
    auto pos2 = positions(c2);
    for (std::size_t i = 0; i < p1.size(); ++i) {
        if (draws[i] >= p) {
            exchange_into(c1, pos1, i, p2[i]);
            exchange_into(c2, pos2, i, p1[i]);
        }
    }
    return {c1, c2};
}

Children nwox_crossover(std::span<const City> p1, std::span<const City> p2, CutPoints cuts) {
    check_parents(p1, p2);
    check_cuts(cuts, p1.size());
    return {nwox_child(p1, p2, cuts), nwox_child(p2, p1, cuts)};
}

Children ox_crossover(std::span<const City> p1, std::span<const City> p2, CutPoints cuts) {
    check_parents(p1, p2);
    check_cuts(cuts, p1.size());
    std::vector<bool> keep(p1.size(), true);
    for (std::size_t i = cuts.first; i <= cuts.last; ++i) keep[i] = false;
    return {fill_by_donor_order(p1, p2, keep), fill_by_donor_order(p2, p1, keep)};
}

void rsm_mutate(std::span<City> genes, CutPoints cuts) {
    check_cuts(cuts, genes.size());
    std::reverse(genes.begin() + static_cast<std::ptrdiff_t>(cuts.first),
                 genes.begin() + static_cast<std::ptrdiff_t>(cuts.last) + 1);
}

Genes rsm_mutation(std::span<const City> genes, CutPoints cuts) {
    Genes out(genes.begin(), genes.end());
    rsm_mutate(out, cuts);
    return out;
}

SelectionWeights::SelectionWeights(std::vector<double> probabilities)
    : probabilities_(std::move(probabilities)), cumulative_(probabilities_.size()) {
    double running = 0.0;
    for (std::size_t i = 0; i < probabilities_.size(); ++i) {
        running += probabilities_[i];
        cumulative_[i] = running;
    }
}

SelectionWeights SelectionWeights::from_probabilities(std::vector<double> probabilities) {
    if (probabilities.empty()) throw std::invalid_argument("selection weights must be nonempty");
    double sum = 0.0;
    for (const double w : probabilities) {
        if (!(w >= 0.0 && w <= 1.0)) throw std::invalid_argument("selection weight outside [0,1]");
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-12) throw std::invalid_argument("selection weights do not sum to 1");
    return SelectionWeights(std::move(probabilities));
}

SelectionWeights SelectionWeights::uniform(std::size_t n) {
    if (n == 0) throw std::invalid_argument("selection weights must be nonempty");
    return SelectionWeights(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

SelectionWeights roulette_weights(std::span<const double> fitness) {
    const std::size_t n = fitness.size();
    if (n < 2) throw std::invalid_argument("roulette weights need at least two members");
    double total = 0.0;
    for (const double f : fitness) {
        if (!(f > 0.0) || !std::isfinite(f)) throw std::invalid_argument("roulette weights need positive finite fitness");
        total += f;
    }
    // (1 - f/S)/(N-1) rewritten as (S - f)/(S(N-1)): one rounding instead of
    // three, exact whenever the fitness values are small integers.
    const double denom = total * static_cast<double>(n - 1);
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = (total - fitness[i]) / denom;
    return SelectionWeights(std::move(w));
}

std::size_t roulette_select(const SelectionWeights& weights, double u) {
    const auto cum = weights.cumulative();
    const auto it = std::upper_bound(cum.begin(), cum.end(), u);
    if (it != cum.end()) return static_cast<std::size_t>(it - cum.begin());
    // u beyond the last partial sum through rounding: take the last member with mass.
    const auto probs = weights.probabilities();
    std::size_t k = probs.size() - 1;
    while (k > 0 && probs[k] == 0.0) --k;
    return k;
}

}  // namespace tspga

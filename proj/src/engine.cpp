#include "tspga/engine.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace tspga {

std::string_view to_string(InitStrategy strategy) {
    switch (strategy) {
        case InitStrategy::Random: return "random";
        case InitStrategy::MutateFirst: return "mutate-first";
        case InitStrategy::HeuristicNn: return "heuristic-nn";
    }
    return "?";
}

InitStrategy parse_init_strategy(std::string_view name) {
    if (name == "random") return InitStrategy::Random;
    if (name == "mutate-first") return InitStrategy::MutateFirst;
    if (name == "heuristic-nn") return InitStrategy::HeuristicNn;
    throw std::invalid_argument("unknown init strategy '" + std::string(name) +
                                "' (expected random|mutate-first|heuristic-nn)");
}

void GaParams::validate() const {
    if (population_size < 2) throw std::invalid_argument("population must be at least 2");
    if (!(crossover_prob >= 0.0 && crossover_prob <= 1.0)) throw std::invalid_argument("px must lie in [0,1]");
    if (!(mutation_prob >= 0.0 && mutation_prob <= 1.0)) throw std::invalid_argument("pm must lie in [0,1]");
    crossover.validate();
}

std::size_t Population::best_index() const {
    if (members.empty()) throw std::invalid_argument("empty population");
    std::size_t best = 0;
    for (std::size_t i = 1; i < members.size(); ++i) {
        if (*members[i].length < *members[best].length) best = i;
    }
    return best;
}

RunStreams RunStreams::from_seed(std::uint64_t seed) {
    return RunStreams{Rng(derive_seed(seed, 0)), Rng(derive_seed(seed, 1)), Rng(derive_seed(seed, 2)),
                      Rng(derive_seed(seed, 3)), Rng(derive_seed(seed, 4))};
}

std::vector<City> nearest_neighbor_tour(const TspInstance& instance, City start) {
    const std::size_t n = instance.size();
    std::vector<City> order;
    order.reserve(n);
    std::vector<bool> visited(n, false);
    City current = start;
    visited[static_cast<std::size_t>(current)] = true;
    order.push_back(current);
    while (order.size() < n) {
        City next = -1;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < n; ++c) {
            if (visited[c]) continue;
            const double d = instance.distance(current, static_cast<City>(c));
            if (d < best) {
                best = d;
                next = static_cast<City>(c);
            }
        }
        visited[static_cast<std::size_t>(next)] = true;
        order.push_back(next);
        current = next;
    }
    return order;
}

Population init_population(const TspInstance& instance, InitStrategy strategy, std::size_t size, Rng& rng) {
    if (size < 2) throw std::invalid_argument("population must be at least 2");
    const std::size_t n = instance.size();
    Population pop;
    pop.members.reserve(size);

    auto push = [&](std::vector<City> order) {
        Tour t{std::move(order), std::nullopt};
        evaluate(t, instance);
        pop.members.push_back(std::move(t));
    };

    if (strategy == InitStrategy::Random) {
        for (std::size_t i = 0; i < size; ++i) push(random_permutation(n, rng));
        return pop;
    }

    // One progenitor, the rest of the population are RSM variants of it.
    std::vector<City> progenitor = strategy == InitStrategy::MutateFirst ? random_permutation(n, rng)
                                                                         : nearest_neighbor_tour(instance, 0);
    push(progenitor);
    while (pop.members.size() < size) push(rsm_mutation(progenitor, random_cuts(rng, n)));
    return pop;
}

Children apply_crossover(const CrossoverSpec& spec, std::span<const City> p1, std::span<const City> p2, Rng& rng) {
    const std::size_t n = p1.size();
    switch (spec.kind) {
        case CrossoverKind::Uxo: return uniform_crossover(p1, p2, random_mask(rng, n));
        case CrossoverKind::Cx: return cx_crossover(p1, p2);
        case CrossoverKind::Pmx: return pmx_crossover(p1, p2, random_cuts(rng, n));
        case CrossoverKind::Upmx: return upmx_crossover(p1, p2, spec.upmx_p, random_draws(rng, n));
        case CrossoverKind::Nwox: return nwox_crossover(p1, p2, random_cuts(rng, n));
        case CrossoverKind::Ox: return ox_crossover(p1, p2, random_cuts(rng, n));
    }
    throw std::logic_error("unhandled crossover kind");
}

namespace {

SelectionWeights selection_weights(const Population& pop) {
    std::vector<double> fitness(pop.members.size());
    bool positive = true;
    for (std::size_t i = 0; i < fitness.size(); ++i) {
        fitness[i] = *pop.members[i].length;
        positive = positive && fitness[i] > 0.0;
    }
    // Zero-length tours only occur on degenerate instances (one city or all
    // cities coincident); every member is then equally fit.
    return positive ? roulette_weights(fitness) : SelectionWeights::uniform(fitness.size());
}

}  // namespace

Population evolve_generation(const Population& population, const GaParams& params, const TspInstance& instance,
                             RunStreams& streams) {
    const std::size_t size = population.members.size();
    if (size == 0) throw std::invalid_argument("empty population");

    Population next;
    next.generation = population.generation + 1;
    next.members.reserve(size);
    next.members.push_back(population.members[population.best_index()]);
    if (size == 1) return next;

    const auto weights = selection_weights(population);
    const std::size_t n = instance.size();

    auto insert = [&](Genes genes) {
        if (params.mutation_prob > 0.0 && streams.coin.bernoulli(params.mutation_prob))
            rsm_mutate(genes, random_cuts(streams.mutation, n));
        Tour child{std::move(genes), std::nullopt};
        evaluate(child, instance);
        next.members.push_back(std::move(child));
    };

    while (next.members.size() < size) {
        const auto& p1 = population.members[roulette_select(weights, streams.selection.uniform01())].order;
        const auto& p2 = population.members[roulette_select(weights, streams.selection.uniform01())].order;
        Children kids = params.crossover_prob > 0.0 && streams.coin.bernoulli(params.crossover_prob)
                            ? apply_crossover(params.crossover, p1, p2, streams.crossover)
                            : Children{p1, p2};
        insert(std::move(kids.first));
        if (next.members.size() < size) insert(std::move(kids.second));
    }
    return next;
}

RunRecord run_ga(const TspInstance& instance, const GaParams& params) {
    params.validate();
    auto streams = RunStreams::from_seed(params.seed);
    auto initial = init_population(instance, params.init, params.population_size, streams.init);
    return run_ga(instance, params, std::move(initial));
}

RunRecord run_ga(const TspInstance& instance, const GaParams& params, Population initial) {
    params.validate();
    if (initial.members.size() != params.population_size)
        throw std::invalid_argument("initial population size differs from params.population_size");
    const auto started = std::chrono::steady_clock::now();

    auto streams = RunStreams::from_seed(params.seed);
    RunRecord record;
    record.seed = params.seed;
    record.trace.reserve(params.iterations + 1);

    Population pop = std::move(initial);
    record.trace.push_back(pop.best_length());
    for (std::size_t g = 0; g < params.iterations; ++g) {
        pop = evolve_generation(pop, params, instance, streams);
        record.trace.push_back(pop.best_length());
    }

    record.best_tour = pop.members[pop.best_index()];
    record.best_length = *record.best_tour.length;
    record.generations_run = params.iterations;
    record.wall_time = std::chrono::steady_clock::now() - started;
    return record;
}

}  // namespace tspga

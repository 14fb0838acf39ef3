#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "test_support.hpp"
#include "tspga/operators.hpp"
#include "tspga/rng.hpp"

using namespace tspga;
using tspga::test::genes;

namespace {

// Reference implementations. Each follows the textbook description with
// plain searches and sets, sharing no code with src/operators.cpp.
namespace ref {

// PMX by mapping repair: child1 takes p2's segment; an outside gene of p1
// that collides with the segment is replaced through the segment mapping
// p2[j] -> p1[j] until it no longer collides.
Genes pmx_child(const Genes& p1, const Genes& p2, std::size_t a, std::size_t b) {
    Genes child(p1.size());
    for (std::size_t i = a; i <= b; ++i) child[i] = p2[i];
    for (std::size_t i = 0; i < p1.size(); ++i) {
        if (i >= a && i <= b) continue;
        City g = p1[i];
        for (;;) {
            const auto it = std::find(p2.begin() + static_cast<std::ptrdiff_t>(a),
                                      p2.begin() + static_cast<std::ptrdiff_t>(b) + 1, g);
            if (it == p2.begin() + static_cast<std::ptrdiff_t>(b) + 1) break;
            g = p1[static_cast<std::size_t>(it - p2.begin())];
        }
        child[i] = g;
    }
    return child;
}

Genes ox_child(const Genes& p1, const Genes& p2, std::size_t a, std::size_t b) {
    std::set<City> outside;
    for (std::size_t i = 0; i < p1.size(); ++i)
        if (i < a || i > b) outside.insert(p1[i]);
    Genes middle;
    for (const City g : p2)
        if (!outside.count(g)) middle.push_back(g);
    Genes child = p1;
    std::copy(middle.begin(), middle.end(), child.begin() + static_cast<std::ptrdiff_t>(a));
    return child;
}

Genes nwox_child(const Genes& p1, const Genes& p2, std::size_t a, std::size_t b) {
    const std::set<City> segment(p2.begin() + static_cast<std::ptrdiff_t>(a),
                                 p2.begin() + static_cast<std::ptrdiff_t>(b) + 1);
    Genes survivors;
    std::copy_if(p1.begin(), p1.end(), std::back_inserter(survivors), [&](City g) { return !segment.count(g); });
    survivors.insert(survivors.begin() + static_cast<std::ptrdiff_t>(a), p2.begin() + static_cast<std::ptrdiff_t>(a),
                     p2.begin() + static_cast<std::ptrdiff_t>(b) + 1);
    return survivors;
}

Children cx(const Genes& p1, const Genes& p2) {
    std::set<std::size_t> cycle;
    std::size_t i = 0;
    while (!cycle.count(i)) {
        cycle.insert(i);
        i = static_cast<std::size_t>(std::find(p1.begin(), p1.end(), p2[i]) - p1.begin());
    }
    Genes c1(p1.size()), c2(p1.size());
    for (std::size_t k = 0; k < p1.size(); ++k) {
        c1[k] = cycle.count(k) ? p1[k] : p2[k];
        c2[k] = cycle.count(k) ? p2[k] : p1[k];
    }
    return {c1, c2};
}

Genes upmx_child(Genes child, const Genes& donor, const std::vector<bool>& swap_at) {
    for (std::size_t i = 0; i < child.size(); ++i) {
        if (!swap_at[i]) continue;
        const auto j = static_cast<std::size_t>(std::find(child.begin(), child.end(), donor[i]) - child.begin());
        std::swap(child[i], child[j]);
    }
    return child;
}

Genes uniform_child(const Genes& keeper, const Genes& donor, const std::vector<bool>& mask) {
    std::set<City> kept;
    for (std::size_t i = 0; i < keeper.size(); ++i)
        if (mask[i]) kept.insert(keeper[i]);
    Genes fill;
    for (const City g : donor)
        if (!kept.count(g)) fill.push_back(g);
    Genes child(keeper.size());
    std::size_t next = 0;
    for (std::size_t i = 0; i < keeper.size(); ++i) child[i] = mask[i] ? keeper[i] : fill[next++];
    return child;
}

}  // namespace ref

bool is_permutation_of_n(const Genes& g) { return validate_tour(g, g.size()).ok(); }

// Applies every crossover kind with random arguments drawn from `rng`.
Children any_crossover(CrossoverKind kind, const Genes& p1, const Genes& p2, Rng& rng) {
    const std::size_t n = p1.size();
    switch (kind) {
        case CrossoverKind::Uxo: return uniform_crossover(p1, p2, random_mask(rng, n));
        case CrossoverKind::Cx: return cx_crossover(p1, p2);
        case CrossoverKind::Pmx: return pmx_crossover(p1, p2, random_cuts(rng, n));
        case CrossoverKind::Upmx: return upmx_crossover(p1, p2, rng.uniform01(), random_draws(rng, n));
        case CrossoverKind::Nwox: return nwox_crossover(p1, p2, random_cuts(rng, n));
        case CrossoverKind::Ox: return ox_crossover(p1, p2, random_cuts(rng, n));
    }
    return {};
}

}  // namespace

TEST_CASE("crossover names round-trip") {
    for (const auto kind : kAllCrossovers) CHECK(parse_crossover_kind(to_string(kind)) == kind);
    CHECK_THROWS_AS(parse_crossover_kind("erx"), std::invalid_argument);
    CHECK(parse_mutation_kind("rsm") == MutationKind::Rsm);
    CHECK_THROWS_AS(parse_mutation_kind("psm"), std::invalid_argument);
    CHECK_THROWS_AS((CrossoverSpec{CrossoverKind::Upmx, 1.5}.validate()), std::invalid_argument);
}

TEST_CASE("cx worked examples") {
    auto [c1, c2] = cx_crossover(genes({1, 2, 3, 4}), genes({2, 1, 4, 3}));
    CHECK(c1 == genes({1, 2, 4, 3}));
    CHECK(c2 == genes({2, 1, 3, 4}));

    auto [d1, d2] = cx_crossover(genes({1, 2}), genes({2, 1}));
    CHECK(d1 == genes({1, 2}));
    CHECK(d2 == genes({2, 1}));

    CHECK_THROWS_AS(cx_crossover(genes({1, 2}), genes({1, 2, 3})), std::invalid_argument);
}

TEST_CASE("pmx worked examples") {
    // cuts a=2, b=4 in 1-based positions
    auto [c1, c2] = pmx_crossover(genes({1, 2, 3, 4, 5}), genes({5, 4, 3, 2, 1}), {1, 3});
    CHECK(c1 == genes({1, 4, 3, 2, 5}));
    CHECK(c2 == genes({5, 2, 3, 4, 1}));

    const auto p1 = genes({1, 2, 3, 4, 5, 6, 7, 8, 9});
    const auto p2 = genes({4, 5, 2, 1, 8, 7, 6, 9, 3});
    auto [g1, g2] = pmx_crossover(p1, p2, {3, 6});
    CHECK(g1 == genes({4, 2, 3, 1, 8, 7, 6, 5, 9}));
    CHECK(g2 == genes({1, 8, 2, 4, 5, 6, 7, 9, 3}));

    auto [f1, f2] = pmx_crossover(p1, p2, {0, 8});
    CHECK(f1 == p2);
    CHECK(f2 == p1);

    CHECK_THROWS_AS(pmx_crossover(p1, p2, {4, 3}), std::invalid_argument);
    CHECK_THROWS_AS(pmx_crossover(p1, p2, {0, 9}), std::invalid_argument);
}

TEST_CASE("upmx worked examples") {
    const auto p1 = genes({1, 2, 3});
    const auto p2 = genes({3, 2, 1});
    // exchange only at position 1: draw >= p there, below p elsewhere
    auto [c1, c2] = upmx_crossover(p1, p2, 0.5, std::vector<double>{0.9, 0.1, 0.1});
    CHECK(c1 == genes({3, 2, 1}));
    CHECK(c2 == genes({1, 2, 3}));

    auto [n1, n2] = upmx_crossover(p1, p2, 0.5, std::vector<double>{0.1, 0.2, 0.3});
    CHECK(n1 == p1);
    CHECK(n2 == p2);

    // q >= p triggers, so p = 0 exchanges everywhere and the children swap parents
    const auto a = genes({2, 4, 1, 3, 5});
    const auto b = genes({5, 1, 3, 4, 2});
    auto [s1, s2] = upmx_crossover(a, b, 0.0, std::vector<double>(5, 0.0));
    CHECK(s1 == b);
    CHECK(s2 == a);

    CHECK_THROWS_AS(upmx_crossover(p1, p2, 0.5, std::vector<double>{0.1}), std::invalid_argument);
}

TEST_CASE("nwox worked examples") {
    auto [c1, c2] = nwox_crossover(genes({1, 2, 3, 4, 5, 6}), genes({6, 5, 4, 3, 2, 1}), {2, 3});
    CHECK(c1 == genes({1, 2, 4, 3, 5, 6}));
    CHECK(c2 == genes({6, 5, 3, 4, 2, 1}));

    auto [f1, f2] = nwox_crossover(genes({1, 2, 3, 4}), genes({3, 1, 4, 2}), {0, 3});
    CHECK(f1 == genes({3, 1, 4, 2}));
    CHECK(f2 == genes({1, 2, 3, 4}));
}

TEST_CASE("ox worked examples") {
    const auto p1 = genes({1, 2, 3, 4, 5, 6, 7, 8});
    const auto p2 = genes({8, 7, 6, 5, 4, 3, 2, 1});
    auto [c1, c2] = ox_crossover(p1, p2, {2, 4});
    CHECK(c1 == genes({1, 2, 5, 4, 3, 6, 7, 8}));
    CHECK(c2 == genes({8, 7, 4, 5, 6, 3, 2, 1}));

    auto [f1, f2] = ox_crossover(p1, p2, {0, 7});
    CHECK(f1 == p2);
    CHECK(f2 == p1);
}

TEST_CASE("uniform crossover worked examples") {
    const auto p1 = genes({1, 2, 3, 4});
    const auto p2 = genes({4, 3, 2, 1});
    auto [c1, c2] = uniform_crossover(p1, p2, {true, true, false, false});
    CHECK(c1 == genes({1, 2, 4, 3}));
    CHECK(c2 == genes({4, 3, 1, 2}));

    auto [t1, t2] = uniform_crossover(p1, p2, std::vector<bool>(4, true));
    CHECK(t1 == p1);
    CHECK(t2 == p2);

    CHECK_THROWS_AS(uniform_crossover(p1, p2, {true}), std::invalid_argument);
}

TEST_CASE("rsm worked examples") {
    const auto t = genes({1, 2, 3, 4, 5, 6});
    CHECK(rsm_mutation(t, {1, 4}) == genes({1, 5, 4, 3, 2, 6}));
    CHECK(rsm_mutation(t, {3, 3}) == t);
    CHECK(rsm_mutation(t, {0, 5}) == genes({6, 5, 4, 3, 2, 1}));
    CHECK_THROWS_AS(rsm_mutation(t, {2, 6}), std::invalid_argument);

    const auto inst = tspga::test::random_instance(6, 3);
    CHECK(tour_length(rsm_mutation(t, {0, 5}), inst) == doctest::Approx(tour_length(t, inst)));
}

TEST_CASE("operators agree with reference implementations") {
    Rng rng(2024);
    for (int trial = 0; trial < 3000; ++trial) {
        const std::size_t n = 1 + rng.below(15);
        const auto p1 = random_permutation(n, rng);
        const auto p2 = random_permutation(n, rng);
        const auto cuts = random_cuts(rng, n);

        const auto pmx = pmx_crossover(p1, p2, cuts);
        REQUIRE(pmx.first == ref::pmx_child(p1, p2, cuts.first, cuts.last));
        REQUIRE(pmx.second == ref::pmx_child(p2, p1, cuts.first, cuts.last));

        const auto ox = ox_crossover(p1, p2, cuts);
        REQUIRE(ox.first == ref::ox_child(p1, p2, cuts.first, cuts.last));
        REQUIRE(ox.second == ref::ox_child(p2, p1, cuts.first, cuts.last));

        const auto nwox = nwox_crossover(p1, p2, cuts);
        REQUIRE(nwox.first == ref::nwox_child(p1, p2, cuts.first, cuts.last));
        REQUIRE(nwox.second == ref::nwox_child(p2, p1, cuts.first, cuts.last));

        REQUIRE(cx_crossover(p1, p2) == ref::cx(p1, p2));

        const double p = rng.uniform01();
        const auto draws = random_draws(rng, n);
        std::vector<bool> swap_at(n);
        for (std::size_t i = 0; i < n; ++i) swap_at[i] = draws[i] >= p;
        const auto upmx = upmx_crossover(p1, p2, p, draws);
        REQUIRE(upmx.first == ref::upmx_child(p1, p2, swap_at));
        REQUIRE(upmx.second == ref::upmx_child(p2, p1, swap_at));

        const auto mask = random_mask(rng, n);
        const auto ux = uniform_crossover(p1, p2, mask);
        REQUIRE(ux.first == ref::uniform_child(p1, p2, mask));
        REQUIRE(ux.second == ref::uniform_child(p2, p1, mask));
    }
}

TEST_CASE("closure: every child is a permutation") {
    Rng rng(11);
    std::vector<std::size_t> sizes{2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 52};
    for (const auto kind : kAllCrossovers) {
        CAPTURE(to_string(kind));
        for (const std::size_t n : sizes) {
            for (int trial = 0; trial < 10000; ++trial) {
                const auto p1 = random_permutation(n, rng);
                const auto p2 = random_permutation(n, rng);
                const auto [c1, c2] = any_crossover(kind, p1, p2, rng);
                REQUIRE(is_permutation_of_n(c1));
                REQUIRE(is_permutation_of_n(c2));
                REQUIRE(c1.size() == n);
            }
        }
    }
    for (const std::size_t n : sizes) {
        for (int trial = 0; trial < 10000; ++trial) {
            auto t = random_permutation(n, rng);
            rsm_mutate(t, random_cuts(rng, n));
            REQUIRE(is_permutation_of_n(t));
        }
    }
}

TEST_CASE("identical parents are a fixpoint") {
    Rng rng(12);
    for (const auto kind : kAllCrossovers) {
        CAPTURE(to_string(kind));
        for (int trial = 0; trial < 1000; ++trial) {
            const auto p = random_permutation(1 + rng.below(60), rng);
            const auto [c1, c2] = any_crossover(kind, p, p, rng);
            REQUIRE(c1 == p);
            REQUIRE(c2 == p);
        }
    }
}

TEST_CASE("cx positional inheritance, exhaustive up to relabeling for n <= 8") {
    // CX commutes with relabeling genes, so fixing p1 = identity covers all pairs.
    for (std::size_t n = 1; n <= 8; ++n) {
        const auto p1 = tspga::test::identity(n);
        auto p2 = p1;
        do {
            const auto [c1, c2] = cx_crossover(p1, p2);
            for (std::size_t i = 0; i < n; ++i) {
                REQUIRE((c1[i] == p1[i] || c1[i] == p2[i]));
                REQUIRE((c2[i] == p1[i] || c2[i] == p2[i]));
            }
            REQUIRE(c1[0] == p1[0]);
            REQUIRE(is_permutation_of_n(c1));
            REQUIRE(is_permutation_of_n(c2));
        } while (std::next_permutation(p2.begin(), p2.end()));
    }
}

TEST_CASE("segment inheritance and absolute order") {
    Rng rng(13);
    for (int trial = 0; trial < 5000; ++trial) {
        const std::size_t n = 2 + rng.below(40);
        const auto p1 = random_permutation(n, rng);
        const auto p2 = random_permutation(n, rng);
        const auto cuts = random_cuts(rng, n);
        const auto seg_begin = static_cast<std::ptrdiff_t>(cuts.first);
        const auto seg_end = static_cast<std::ptrdiff_t>(cuts.last) + 1;

        const auto pmx = pmx_crossover(p1, p2, cuts).first;
        REQUIRE(std::equal(pmx.begin() + seg_begin, pmx.begin() + seg_end, p2.begin() + seg_begin));

        const auto nwox = nwox_crossover(p1, p2, cuts).first;
        REQUIRE(std::equal(nwox.begin() + seg_begin, nwox.begin() + seg_end, p2.begin() + seg_begin));
        // genes outside p2's segment keep p1's relative order
        const std::set<City> seg(p2.begin() + seg_begin, p2.begin() + seg_end);
        Genes from_child, from_p1;
        for (const City g : nwox)
            if (!seg.count(g)) from_child.push_back(g);
        for (const City g : p1)
            if (!seg.count(g)) from_p1.push_back(g);
        REQUIRE(from_child == from_p1);

        const auto ox = ox_crossover(p1, p2, cuts).first;
        const std::set<City> ox_mid(ox.begin() + seg_begin, ox.begin() + seg_end);
        const std::set<City> p1_mid(p1.begin() + seg_begin, p1.begin() + seg_end);
        REQUIRE(ox_mid == p1_mid);
    }
}

TEST_CASE("rsm is an involution") {
    Rng rng(14);
    for (int trial = 0; trial < 5000; ++trial) {
        const std::size_t n = 1 + rng.below(60);
        const auto t = random_permutation(n, rng);
        const auto cuts = random_cuts(rng, n);
        REQUIRE(rsm_mutation(rsm_mutation(t, cuts), cuts) == t);
    }
}

TEST_CASE("roulette_weights") {
    SUBCASE("equal fitness gives equal weights") {
        const auto w = roulette_weights(std::vector<double>{7.5, 7.5, 7.5});
        for (const double p : w.probabilities()) CHECK(p == doctest::Approx(1.0 / 3.0));
    }
    SUBCASE("worked values") {
        const auto w = roulette_weights(std::vector<double>{1, 2, 3});
        CHECK(w.probabilities()[0] == 5.0 / 12.0);
        CHECK(w.probabilities()[1] == 4.0 / 12.0);
        CHECK(w.probabilities()[2] == 3.0 / 12.0);

        const auto two = roulette_weights(std::vector<double>{1, 3});
        CHECK(two.probabilities()[0] == 0.75);
        CHECK(two.probabilities()[1] == 0.25);
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(roulette_weights(std::vector<double>{1.0}), std::invalid_argument);
        CHECK_THROWS_AS(roulette_weights(std::vector<double>{1.0, 0.0}), std::invalid_argument);
        CHECK_THROWS_AS(roulette_weights(std::vector<double>{1.0, -2.0}), std::invalid_argument);
        CHECK_THROWS_AS(SelectionWeights::from_probabilities({0.5, 0.4}), std::invalid_argument);
        CHECK_THROWS_AS(SelectionWeights::from_probabilities({1.5, -0.5}), std::invalid_argument);
    }
    SUBCASE("normalized and antitone in fitness") {
        Rng rng(15);
        for (int trial = 0; trial < 1000; ++trial) {
            const std::size_t n = 2 + rng.below(99);
            std::vector<double> f(n);
            for (auto& v : f) v = 1.0 + rng.uniform01() * 1e4;
            const auto w = roulette_weights(f);
            const auto p = w.probabilities();
            REQUIRE(std::abs(std::accumulate(p.begin(), p.end(), 0.0) - 1.0) <= 1e-12);
            for (std::size_t i = 0; i < n; ++i) {
                REQUIRE((p[i] >= 0.0 && p[i] <= 1.0));
                for (std::size_t j = 0; j < n; ++j)
                    if (f[i] < f[j]) REQUIRE(p[i] > p[j]);
            }
        }
    }
}

TEST_CASE("roulette_select") {
    const auto single = SelectionWeights::from_probabilities({1.0});
    CHECK(roulette_select(single, 0.0) == 0);
    CHECK(roulette_select(single, 0.999) == 0);

    const auto half = SelectionWeights::from_probabilities({0.5, 0.5});
    CHECK(roulette_select(half, 0.25) == 0);
    CHECK(roulette_select(half, 0.75) == 1);
    CHECK(roulette_select(half, 0.5) == 1);

    const auto w = roulette_weights(std::vector<double>{1, 2, 3});
    CHECK(roulette_select(w, 0.0) == 0);
    CHECK(roulette_select(w, 0.4) == 0);
    CHECK(roulette_select(w, 0.5) == 1);
    CHECK(roulette_select(w, 0.8) == 2);
    CHECK(roulette_select(w, std::nextafter(1.0, 0.0)) == 2);

    const auto gap = SelectionWeights::from_probabilities({0.5, 0.0, 0.5});
    CHECK(roulette_select(gap, 0.5) == 2);
    const auto tail = SelectionWeights::from_probabilities({0.5, 0.5, 0.0});
    CHECK(roulette_select(tail, 1.0) == 1);
}

TEST_CASE("empirical selection frequencies") {
    Rng rng(16);
    for (const auto& fitness : {std::vector<double>{1, 2, 3}, std::vector<double>{10, 10, 40, 5, 80}}) {
        const auto w = roulette_weights(fitness);
        const int draws = 100000;
        std::vector<int> hits(fitness.size(), 0);
        for (int i = 0; i < draws; ++i) ++hits[roulette_select(w, rng.uniform01())];
        for (std::size_t k = 0; k < fitness.size(); ++k) {
            const double p = w.probabilities()[k];
            const double sigma = std::sqrt(draws * p * (1 - p));
            CHECK(std::abs(hits[k] - draws * p) <= 3 * sigma);
        }
    }
}

TEST_CASE("random_cuts covers all pairs uniformly") {
    Rng rng(17);
    const std::size_t n = 4;
    std::map<std::pair<std::size_t, std::size_t>, int> counts;
    const int draws = 100000;
    for (int i = 0; i < draws; ++i) {
        const auto c = random_cuts(rng, n);
        REQUIRE(c.first <= c.last);
        REQUIRE(c.last < n);
        ++counts[{c.first, c.last}];
    }
    REQUIRE(counts.size() == n * (n + 1) / 2);
    const double p = 1.0 / static_cast<double>(counts.size());
    for (const auto& [pair, hits] : counts) CHECK(std::abs(hits - draws * p) <= 4 * std::sqrt(draws * p * (1 - p)));
}

#include "tspga/rng.hpp"

#include <numeric>
#include <stdexcept>
#include <utility>

namespace tspga {

namespace {
__extension__ using u128 = unsigned __int128;
}  // namespace

std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept {
    return mix64(mix64(seed) ^ mix64(index + 0x632be59bd9b4e019ULL));
}

std::uint64_t Rng::below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("Rng::below needs a positive bound");
    // Lemire's multiply-shift with rejection of the biased low range.
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
        const u128 m = static_cast<u128>(engine_()) * bound;
        if (static_cast<std::uint64_t>(m) >= threshold) return static_cast<std::uint64_t>(m >> 64);
    }
}

CutPoints random_cuts(Rng& rng, std::size_t n) {
    if (n == 0) throw std::invalid_argument("cannot cut an empty tour");
    // Enumerate pairs row by row: a = 0 has n choices of b, a = 1 has n - 1, ...
    std::uint64_t k = rng.below(static_cast<std::uint64_t>(n) * (n + 1) / 2);
    std::size_t a = 0;
    while (k >= n - a) {
        k -= n - a;
        ++a;
    }
    return {a, a + static_cast<std::size_t>(k)};
}

void shuffle(std::span<City> genes, Rng& rng) {
    for (std::size_t i = genes.size(); i > 1; --i) {
        const auto j = static_cast<std::size_t>(rng.below(i));
        std::swap(genes[i - 1], genes[j]);
    }
}

std::vector<City> random_permutation(std::size_t n, Rng& rng) {
    std::vector<City> order(n);
    std::iota(order.begin(), order.end(), City{0});
    shuffle(order, rng);
    return order;
}

std::vector<bool> random_mask(Rng& rng, std::size_t n) {
    std::vector<bool> mask(n);
    for (std::size_t i = 0; i < n; ++i) mask[i] = (rng.next_u64() >> 63) != 0;
    return mask;
}

std::vector<double> random_draws(Rng& rng, std::size_t n) {
    std::vector<double> draws(n);
    for (auto& d : draws) d = rng.uniform01();
    return draws;
}

}  // namespace tspga

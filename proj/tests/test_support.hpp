#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "tspga/rng.hpp"
#include "tspga/tsp.hpp"

namespace tspga::test {

inline std::string data_path(const std::string& file) { return std::string(TSPGA_DATA_DIR) + "/" + file; }

#ifdef TSPGA_FIXTURE_DIR
inline std::string fixture_path(const std::string& file) { return std::string(TSPGA_FIXTURE_DIR) + "/" + file; }
#endif

/// Cities uniform in [0,1000)^2.
inline TspInstance random_instance(std::size_t n, std::uint64_t seed, Metric metric = Metric::Real) {
    Rng rng(seed);
    std::vector<Point> cities(n);
    for (auto& c : cities) c = {rng.uniform01() * 1000.0, rng.uniform01() * 1000.0};
    return TspInstance("random" + std::to_string(n), std::move(cities), metric);
}

inline std::vector<City> identity(std::size_t n) {
    std::vector<City> v(n);
    std::iota(v.begin(), v.end(), City{0});
    return v;
}

/// 1-based literal tour -> 0-based genes.
inline std::vector<City> genes(std::initializer_list<int> one_based) {
    std::vector<City> out;
    for (int v : one_based) out.push_back(static_cast<City>(v - 1));
    return out;
}

}  // namespace tspga::test

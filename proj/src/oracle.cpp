#include "tspga/oracle.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace tspga {

ExactResult brute_force_optimum(const TspInstance& instance, std::size_t max_n, Enumeration mode) {
    const std::size_t n = instance.size();
    if (n > max_n) {
        throw std::invalid_argument("instance has " + std::to_string(n) + " cities; exact solver cap is " +
                                    std::to_string(max_n));
    }

    std::vector<City> order(n);
    std::iota(order.begin(), order.end(), City{0});

    ExactResult result;
    result.optimal_length = std::numeric_limits<double>::infinity();
    auto consider = [&] {
        ++result.permutations_examined;
        const double len = tour_length(order, instance);
        if (len < result.optimal_length) {
            result.optimal_length = len;
            result.optimal_tour.order = order;
        }
    };

    if (mode == Enumeration::Full) {
        do consider();
        while (std::next_permutation(order.begin(), order.end()));
    } else {
        // City 0 stays in front; of each mirror pair keep the orientation
        // whose second city is smaller than its last.
        do {
            if (n < 3 || order[1] < order[n - 1]) consider();
        } while (std::next_permutation(order.begin() + 1, order.end()));
    }

    // Report the canonical orientation of the winning cycle and its length,
    // so both enumeration modes sum the same edges in the same order.
    auto& best = result.optimal_tour.order;
    std::rotate(best.begin(), std::find(best.begin(), best.end(), City{0}), best.end());
    if (n >= 3 && best[1] > best[n - 1]) std::reverse(best.begin() + 1, best.end());
    result.optimal_length = tour_length(best, instance);
    result.optimal_tour.length = result.optimal_length;
    return result;
}

}  // namespace tspga

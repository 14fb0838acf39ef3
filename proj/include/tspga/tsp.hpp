#pragma once

// Euclidean TSP instances, tours, and TSPLIB ingestion.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tspga {

/// City index, 0-based. Signed so that malformed tours with negative
/// entries can still be represented and diagnosed.
using City = std::int32_t;

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point&, const Point&) = default;
};

/// Distance convention. `Rounded` is the TSPLIB EUC_2D rule: the Euclidean
/// length rounded to the nearest integer.
enum class Metric { Real, Rounded };

std::string_view to_string(Metric metric);
Metric parse_metric(std::string_view text);

double euclid_distance(const Point& a, const Point& b, Metric metric);

/// Immutable symmetric Euclidean instance with a precomputed n x n matrix.
class TspInstance {
public:
    TspInstance(std::string name, std::vector<Point> cities, Metric metric = Metric::Rounded);

    const std::string& name() const noexcept { return name_; }
    std::size_t size() const noexcept { return cities_.size(); }
    Metric metric() const noexcept { return metric_; }
    const std::vector<Point>& cities() const noexcept { return cities_; }

    double distance(City i, City j) const noexcept {
        return dist_[static_cast<std::size_t>(i) * cities_.size() + static_cast<std::size_t>(j)];
    }

    /// Same cities under a different metric.
    TspInstance with_metric(Metric metric) const;

private:
    std::string name_;
    std::vector<Point> cities_;
    Metric metric_;
    std::vector<double> dist_;
};

/// A tour in path representation. `length` is a cache filled by evaluate().
struct Tour {
    std::vector<City> order;
    std::optional<double> length;

    friend bool operator==(const Tour&, const Tour&) = default;
};

/// Closed tour length, closing edge included. Throws std::invalid_argument
/// when the order length differs from the instance size.
double tour_length(std::span<const City> order, const TspInstance& instance);

/// Fills the cached length and returns it.
double evaluate(Tour& tour, const TspInstance& instance);

/// Structured result of validate_tour.
struct TourCheck {
    std::size_t expected_size = 0;
    std::size_t actual_size = 0;
    std::vector<City> duplicates;
    std::vector<City> missing;
    std::vector<City> out_of_range;

    bool length_mismatch() const noexcept { return expected_size != actual_size; }
    bool ok() const noexcept {
        return !length_mismatch() && duplicates.empty() && missing.empty() && out_of_range.empty();
    }
    /// One-line human readable summary ("valid" when ok()).
    std::string describe() const;
};

/// Checks that `order` is a permutation of {0..n-1}.
TourCheck validate_tour(std::span<const City> order, std::size_t n);

/// Raised on malformed TSPLIB input. `line()` is 1-based, 0 when unknown.
class TsplibError : public std::runtime_error {
public:
    TsplibError(const std::string& what, std::size_t line);
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Parses the EUC_2D subset of TSPLIB. Node ids are shifted to 0-based.
TspInstance parse_tsplib(std::istream& in, Metric metric = Metric::Rounded);
TspInstance parse_tsplib(std::string_view text, Metric metric = Metric::Rounded);
TspInstance load_tsplib(const std::filesystem::path& path, Metric metric = Metric::Rounded);

/// Reads a TSPLIB TOUR_SECTION (ids terminated by -1 or EOF), shifted to 0-based.
/// Entries are not checked for being a permutation; use validate_tour.
std::vector<City> parse_tsplib_tour(std::istream& in);
std::vector<City> load_tsplib_tour(const std::filesystem::path& path);

}  // namespace tspga

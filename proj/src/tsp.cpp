#include "tspga/tsp.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace tspga {

std::string_view to_string(Metric metric) {
    return metric == Metric::Rounded ? "rounded" : "real";
}

Metric parse_metric(std::string_view text) {
    if (text == "rounded") return Metric::Rounded;
    if (text == "real") return Metric::Real;
    throw std::invalid_argument("unknown metric '" + std::string(text) + "' (expected rounded|real)");
}

double euclid_distance(const Point& a, const Point& b, Metric metric) {
    const double d = std::hypot(a.x - b.x, a.y - b.y);
    return metric == Metric::Rounded ? std::floor(d + 0.5) : d;
}

TspInstance::TspInstance(std::string name, std::vector<Point> cities, Metric metric)
    : name_(std::move(name)), cities_(std::move(cities)), metric_(metric) {
    if (cities_.empty()) throw std::invalid_argument("instance needs at least one city");
    for (const auto& p : cities_) {
        if (!std::isfinite(p.x) || !std::isfinite(p.y))
            throw std::invalid_argument("city coordinates must be finite");
    }
    const std::size_t n = cities_.size();
    dist_.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = euclid_distance(cities_[i], cities_[j], metric_);
            dist_[i * n + j] = d;
            dist_[j * n + i] = d;
        }
    }
}

TspInstance TspInstance::with_metric(Metric metric) const {
    return TspInstance(name_, cities_, metric);
}

double tour_length(std::span<const City> order, const TspInstance& instance) {
    if (order.size() != instance.size()) {
        throw std::invalid_argument("tour has " + std::to_string(order.size()) +
                                    " entries but instance has " +
                                    std::to_string(instance.size()) + " cities");
    }
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < order.size(); ++i) total += instance.distance(order[i], order[i + 1]);
    total += instance.distance(order.back(), order.front());
    return total;
}

double evaluate(Tour& tour, const TspInstance& instance) {
    tour.length = tour_length(tour.order, instance);
    return *tour.length;
}

namespace {

std::string join(const std::vector<City>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(values[i]);
    }
    return out;
}

}  // namespace

std::string TourCheck::describe() const {
    if (ok()) return "valid";
    std::string out;
    auto add = [&out](const std::string& part) {
        if (!out.empty()) out += "; ";
        out += part;
    };
    if (length_mismatch())
        add("length mismatch: expected " + std::to_string(expected_size) + ", got " +
            std::to_string(actual_size));
    if (!duplicates.empty()) add("duplicate " + join(duplicates));
    if (!missing.empty()) add("missing " + join(missing));
    if (!out_of_range.empty()) add("out of range " + join(out_of_range));
    return out;
}

TourCheck validate_tour(std::span<const City> order, std::size_t n) {
    TourCheck check;
    check.expected_size = n;
    check.actual_size = order.size();
    std::vector<std::size_t> seen(n, 0);
    for (const City c : order) {
        if (c < 0 || static_cast<std::size_t>(c) >= n) {
            check.out_of_range.push_back(c);
            continue;
        }
        if (++seen[static_cast<std::size_t>(c)] == 2) check.duplicates.push_back(c);
    }
    for (std::size_t c = 0; c < n; ++c) {
        if (seen[c] == 0) check.missing.push_back(static_cast<City>(c));
    }
    std::sort(check.duplicates.begin(), check.duplicates.end());
    return check;
}

TsplibError::TsplibError(const std::string& what, std::size_t line)
    : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::string upper(std::string_view s) {
    std::string out(s);
    for (auto& ch : out) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    return out;
}

// Splits "KEY : VALUE" / "KEY: VALUE" / "KEY" into (upper-cased key, value).
std::pair<std::string, std::string_view> split_header(std::string_view line) {
    const auto colon = line.find(':');
    if (colon == std::string_view::npos) return {upper(trim(line)), {}};
    return {upper(trim(line.substr(0, colon))), trim(line.substr(colon + 1))};
}

template <typename T>
bool parse_number(std::string_view token, T& value) {
    const char* first = token.data();
    const char* last = token.data() + token.size();
    if (first != last && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, value);
    return ec == std::errc{} && ptr == last;
}

std::vector<std::string_view> tokens(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        const std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (i > start) out.push_back(line.substr(start, i - start));
    }
    return out;
}

}  // namespace

TspInstance parse_tsplib(std::istream& in, Metric metric) {
    std::string name;
    std::optional<std::size_t> dimension;
    std::optional<std::string> weight_type;
    bool in_coords = false;
    std::vector<Point> cities;
    std::vector<bool> filled;
    std::size_t coords_read = 0;

    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const std::string_view line = trim(raw);
        if (line.empty()) continue;
        if (line == "EOF") break;

        if (in_coords) {
            const auto tok = tokens(line);
            if (tok.size() != 3) throw TsplibError("malformed coordinate line '" + std::string(line) + "'", lineno);
            long long id = 0;
            Point p;
            if (!parse_number(tok[0], id) || !parse_number(tok[1], p.x) || !parse_number(tok[2], p.y))
                throw TsplibError("malformed coordinate line '" + std::string(line) + "'", lineno);
            if (id < 1 || static_cast<std::size_t>(id) > *dimension)
                throw TsplibError("node id " + std::to_string(id) + " outside 1.." + std::to_string(*dimension), lineno);
            const auto idx = static_cast<std::size_t>(id - 1);
            if (filled[idx]) throw TsplibError("duplicate node id " + std::to_string(id), lineno);
            filled[idx] = true;
            cities[idx] = p;
            if (++coords_read == *dimension) in_coords = false;
            continue;
        }

        const auto [key, value] = split_header(line);
        if (key == "NAME") {
            name = std::string(value);
        } else if (key == "TYPE") {
            if (upper(value) != "TSP") throw TsplibError("unsupported TYPE '" + std::string(value) + "'", lineno);
        } else if (key == "DIMENSION") {
            std::size_t n = 0;
            if (!parse_number(value, n) || n == 0) throw TsplibError("bad DIMENSION '" + std::string(value) + "'", lineno);
            dimension = n;
        } else if (key == "EDGE_WEIGHT_TYPE") {
            if (upper(value) != "EUC_2D")
                throw TsplibError("unsupported EDGE_WEIGHT_TYPE '" + std::string(value) + "' (only EUC_2D)", lineno);
            weight_type = upper(value);
        } else if (key == "NODE_COORD_SECTION") {
            if (!dimension) throw TsplibError("NODE_COORD_SECTION before DIMENSION", lineno);
            if (!weight_type) throw TsplibError("NODE_COORD_SECTION before EDGE_WEIGHT_TYPE", lineno);
            if (coords_read != 0) throw TsplibError("repeated NODE_COORD_SECTION", lineno);
            cities.assign(*dimension, Point{});
            filled.assign(*dimension, false);
            in_coords = true;
        } else if (key == "COMMENT" || key == "NODE_COORD_TYPE" || key == "DISPLAY_DATA_TYPE") {
            // informational
        } else {
            throw TsplibError("unexpected keyword '" + key + "'", lineno);
        }
    }

    if (!dimension) throw TsplibError("missing DIMENSION", 0);
    if (cities.empty()) throw TsplibError("missing NODE_COORD_SECTION", 0);
    if (coords_read != *dimension)
        throw TsplibError("expected " + std::to_string(*dimension) + " coordinates, found " +
                              std::to_string(coords_read),
                          lineno);
    return TspInstance(name, std::move(cities), metric);
}

TspInstance parse_tsplib(std::string_view text, Metric metric) {
    std::istringstream in{std::string(text)};
    return parse_tsplib(in, metric);
}

TspInstance load_tsplib(const std::filesystem::path& path, Metric metric) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open instance file '" + path.string() + "'");
    return parse_tsplib(in, metric);
}

std::vector<City> parse_tsplib_tour(std::istream& in) {
    std::vector<City> order;
    bool in_section = false;
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const std::string_view line = trim(raw);
        if (line.empty()) continue;
        if (line == "EOF") break;
        if (!in_section) {
            if (split_header(line).first == "TOUR_SECTION") in_section = true;
            continue;
        }
        bool done = false;
        for (const auto tok : tokens(line)) {
            long long id = 0;
            if (!parse_number(tok, id)) throw TsplibError("malformed tour entry '" + std::string(tok) + "'", lineno);
            if (id == -1) {
                done = true;
                break;
            }
            order.push_back(static_cast<City>(id - 1));
        }
        if (done) break;
    }
    if (!in_section) throw TsplibError("missing TOUR_SECTION", 0);
    return order;
}

std::vector<City> load_tsplib_tour(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open tour file '" + path.string() + "'");
    return parse_tsplib_tour(in);
}

}  // namespace tspga

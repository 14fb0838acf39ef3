#include "tspga/params.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace tspga {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

template <typename T>
T parse_value(std::string_view key, std::string_view value) {
    T out{};
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size() || value.empty())
        throw std::invalid_argument("bad value '" + std::string(value) + "' for " + std::string(key));
    return out;
}

double parse_probability(std::string_view key, std::string_view value) {
    const double p = parse_value<double>(key, value);
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument(std::string(key) + " must lie in [0,1]");
    return p;
}

std::string shortest(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

}  // namespace

void apply_param(GaParams& params, std::string_view key, std::string_view value) {
    value = trim(value);
    if (key == "population") {
        const auto n = parse_value<std::size_t>(key, value);
        if (n < 2) throw std::invalid_argument("population must be at least 2");
        params.population_size = n;
    } else if (key == "crossover") {
        params.crossover.kind = parse_crossover_kind(value);
    } else if (key == "px") {
        params.crossover_prob = parse_probability(key, value);
    } else if (key == "mutation") {
        params.mutation = parse_mutation_kind(value);
    } else if (key == "pm") {
        params.mutation_prob = parse_probability(key, value);
    } else if (key == "iterations") {
        params.iterations = parse_value<std::size_t>(key, value);
    } else if (key == "init") {
        params.init = parse_init_strategy(value);
    } else if (key == "seed") {
        params.seed = parse_value<std::uint64_t>(key, value);
    } else if (key == "upmx_p") {
        params.crossover.upmx_p = parse_probability(key, value);
    } else {
        throw std::invalid_argument("unknown parameter '" + std::string(key) + "'");
    }
}

GaParams parse_params(std::string_view text, GaParams base) {
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string_view line = raw;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key=value");
        try {
            apply_param(base, trim(line.substr(0, eq)), line.substr(eq + 1));
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument("config line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return base;
}

GaParams load_params(const std::filesystem::path& path, GaParams base) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file '" + path.string() + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_params(buf.str(), base);
}

std::string format_params(const GaParams& params) {
    std::string out;
    out += "population=" + std::to_string(params.population_size) + "\n";
    out += "crossover=" + std::string(to_string(params.crossover.kind)) + "\n";
    out += "px=" + shortest(params.crossover_prob) + "\n";
    out += "mutation=" + std::string(to_string(params.mutation)) + "\n";
    out += "pm=" + shortest(params.mutation_prob) + "\n";
    out += "iterations=" + std::to_string(params.iterations) + "\n";
    out += "init=" + std::string(to_string(params.init)) + "\n";
    out += "seed=" + std::to_string(params.seed) + "\n";
    out += "upmx_p=" + shortest(params.crossover.upmx_p) + "\n";
    return out;
}

}  // namespace tspga

#include "tspga/cli.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "tspga/bench.hpp"
#include "tspga/engine.hpp"
#include "tspga/oracle.hpp"
#include "tspga/params.hpp"
#include "tspga/tsp.hpp"

namespace tspga {

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("cannot write '" + tmp.string() + "'");
        f.write(content.data(), static_cast<std::streamsize>(content.size()));
        f.flush();
        if (!f) throw std::runtime_error("write failed for '" + tmp.string() + "'");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw std::runtime_error("cannot rename '" + tmp.string() + "' to '" + path.string() + "': " + ec.message());
    }
}

namespace {

struct CliConfig {
    std::string instance;
    std::string metric = "rounded";
    std::string config_path;
    std::map<std::string, std::string> overrides;  ///< GaParams key -> flag value
    std::string out;
    std::string format = "csv";
    int verbosity = 0;

    // bench
    std::string operators = "ox,nwox,pmx,upmx,cx";
    std::size_t populations = 50;
    std::size_t workers = 1;
    std::string px_grid;
    std::string pm_grid;

    // exact
    std::size_t max_n = kDefaultExactCap;

    // validate
    std::string tour;
};

std::string number(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

std::string tsplib_ids(const std::vector<City>& order) {
    std::string s;
    for (std::size_t i = 0; i < order.size(); ++i) {
        if (i) s += ' ';
        s += std::to_string(order[i] + 1);
    }
    return s;
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char c) { return std::isspace(c); }),
                   item.end());
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::vector<double> parse_grid(const std::string& text, double fallback) {
    if (text.empty()) return {fallback};
    if (text == "standard") return standard_probability_grid();
    std::vector<double> out;
    for (const auto& item : split_list(text)) {
        GaParams scratch;
        apply_param(scratch, "px", item);  // range-checks as a probability
        out.push_back(scratch.crossover_prob);
    }
    if (out.empty()) throw std::invalid_argument("empty probability grid");
    return out;
}

void add_common(CLI::App& cmd, CliConfig& cfg) {
    cmd.add_option("--instance", cfg.instance, "TSPLIB EUC_2D instance file")->required();
    cmd.add_option("--metric", cfg.metric, "Distance rounding: rounded|real");
    cmd.add_flag("-v,--verbose", cfg.verbosity, "Progress and timing on stderr");
}

void add_ga_options(CLI::App& cmd, CliConfig& cfg) {
    cmd.add_option("--config", cfg.config_path, "key=value parameter file");
    for (const char* key : {"crossover", "px", "mutation", "pm", "population", "iterations", "init", "seed"}) {
        cmd.add_option_function<std::string>(
            std::string("--") + key, [&cfg, key](const std::string& v) { cfg.overrides[key] = v; },
            std::string("Override GA parameter '") + key + "'");
    }
    cmd.add_option_function<std::string>(
        "--upmx-p", [&cfg](const std::string& v) { cfg.overrides["upmx_p"] = v; },
        "UPMX exchange threshold p (exchange when draw >= p)");
    cmd.add_option("--out", cfg.out, "Output path (solve) or path stem (bench)");
    cmd.add_option("--format", cfg.format, "Output format: csv|json");
}

GaParams resolve_params(const CliConfig& cfg, GaParams params) {
    if (!cfg.config_path.empty()) params = load_params(cfg.config_path, params);
    for (const auto& [key, value] : cfg.overrides) apply_param(params, key, value);
    params.validate();
    return params;
}

TspInstance load_instance(const CliConfig& cfg) {
    return load_tsplib(cfg.instance, parse_metric(cfg.metric));
}

int do_solve(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    const auto instance = load_instance(cfg);
    const auto format = parse_report_format(cfg.format);
    const auto params = resolve_params(cfg, GaParams{});
    const auto record = run_ga(instance, params);

    out << "instance " << instance.name() << " cities " << instance.size() << " metric "
        << to_string(instance.metric()) << '\n';
    out << "crossover " << to_string(params.crossover.kind) << " px " << number(params.crossover_prob)
        << " mutation " << to_string(params.mutation) << " pm " << number(params.mutation_prob) << " population "
        << params.population_size << " iterations " << params.iterations << " init " << to_string(params.init)
        << " seed " << params.seed << '\n';
    out << "initial_best " << number(record.trace.front()) << '\n';
    out << "best_length " << number(record.best_length) << '\n';
    out << "tour " << tsplib_ids(record.best_tour.order) << '\n';
    if (cfg.verbosity > 0) err << "wall time " << record.wall_time.count() << " s\n";

    if (!cfg.out.empty()) {
        std::string content;
        if (format == ReportFormat::Csv) {
            content = "generation,best_length\n";
            for (std::size_t g = 0; g < record.trace.size(); ++g)
                content += std::to_string(g) + ',' + number(record.trace[g]) + '\n';
        } else {
            const nlohmann::json doc{{"instance_name", instance.name()},
                                     {"params",
                                      {{"population", params.population_size},
                                       {"crossover", to_string(params.crossover.kind)},
                                       {"upmx_p", params.crossover.upmx_p},
                                       {"px", params.crossover_prob},
                                       {"mutation", to_string(params.mutation)},
                                       {"pm", params.mutation_prob},
                                       {"iterations", params.iterations},
                                       {"init", to_string(params.init)},
                                       {"seed", params.seed}}},
                                     {"best_length", record.best_length},
                                     {"best_tour", record.best_tour.order},
                                     {"trace", record.trace}};
            content = doc.dump(1) + "\n";
        }
        write_file_atomic(cfg.out, content);
        out << "trace written to " << cfg.out << '\n';
    }
    return 0;
}

void write_report(const BenchReport& report, ReportFormat format, const std::string& stem, std::ostream& out) {
    for (const auto& file : export_report(report, format)) {
        const std::string path = stem + "." + file.suffix;
        write_file_atomic(path, file.content);
        out << "wrote " << path << '\n';
    }
}

void print_summary(const BenchReport& report, std::ostream& out) {
    out << "operator best mean std\n";
    for (const auto& op : report.operators) {
        out << to_string(op.crossover.kind) << ' ' << number(op.summary.best) << ' ' << number(op.summary.mean) << ' '
            << number(op.summary.std) << '\n';
    }
}

int do_bench(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    const auto instance = std::make_shared<const TspInstance>(load_instance(cfg));
    const auto format = parse_report_format(cfg.format);

    ExperimentPlan plan;
    plan.instance = instance;
    plan.base = resolve_params(cfg, GaParams{});
    plan.master_seed = plan.base.seed;
    plan.population_count = cfg.populations;
    plan.workers = cfg.workers;
    for (const auto& name : split_list(cfg.operators)) {
        CrossoverSpec spec = plan.base.crossover;
        spec.kind = parse_crossover_kind(name);
        plan.operators.push_back(spec);
    }
    plan.validate();
    const std::string stem = cfg.out.empty() ? "bench" : cfg.out;

    if (cfg.px_grid.empty() && cfg.pm_grid.empty()) {
        const auto report = run_comparison(plan);
        print_summary(report, out);
        write_report(report, format, stem, out);
        return 0;
    }

    const auto px = parse_grid(cfg.px_grid, plan.base.crossover_prob);
    const auto pm = parse_grid(cfg.pm_grid, plan.base.mutation_prob);
    for (const auto& point : run_sweep(plan, px, pm)) {
        out << "px " << number(point.px) << " pm " << number(point.pm) << '\n';
        print_summary(point.report, out);
        write_report(point.report, format, stem + "_px" + number(point.px) + "_pm" + number(point.pm), out);
        if (cfg.verbosity > 0) err << "finished px=" << point.px << " pm=" << point.pm << '\n';
    }
    return 0;
}

int do_exact(const CliConfig& cfg, std::ostream& out) {
    const auto instance = load_instance(cfg);
    const auto result = brute_force_optimum(instance, cfg.max_n);
    out << "instance " << instance.name() << " cities " << instance.size() << " metric "
        << to_string(instance.metric()) << '\n';
    out << "optimal_length " << number(result.optimal_length) << '\n';
    out << "tour " << tsplib_ids(result.optimal_tour.order) << '\n';
    out << "permutations_examined " << result.permutations_examined << '\n';
    if (!cfg.out.empty()) {
        const nlohmann::json doc{{"instance_name", instance.name()},
                                 {"optimal_length", result.optimal_length},
                                 {"optimal_tour", result.optimal_tour.order},
                                 {"permutations_examined", result.permutations_examined}};
        write_file_atomic(cfg.out, doc.dump(1) + "\n");
    }
    return 0;
}

int do_validate(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    const auto instance = load_instance(cfg);
    out << "instance " << instance.name() << " cities " << instance.size() << " metric "
        << to_string(instance.metric()) << " ok\n";
    if (cfg.tour.empty()) return 0;

    const auto order = load_tsplib_tour(cfg.tour);
    const auto check = validate_tour(order, instance.size());
    if (!check.ok()) {
        // Report 1-based ids, matching the files.
        TourCheck shifted = check;
        for (auto* list : {&shifted.duplicates, &shifted.missing, &shifted.out_of_range})
            for (auto& c : *list) ++c;
        err << "tspga: error: invalid tour: " << shifted.describe() << '\n';
        return 1;
    }
    out << "tour valid length " << number(tour_length(order, instance)) << '\n';
    return 0;
}

std::string one_line(std::string text) {
    std::replace(text.begin(), text.end(), '\n', ' ');
    while (!text.empty() && text.back() == ' ') text.pop_back();
    return text;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CliConfig cfg;
    CLI::App app{"Genetic algorithm toolkit for Euclidean TSP instances", "tspga"};
    app.require_subcommand(1);

    auto* solve = app.add_subcommand("solve", "Run the GA once and report the best tour");
    add_common(*solve, cfg);
    add_ga_options(*solve, cfg);

    auto* bench = app.add_subcommand("bench", "Compare crossovers on shared initial populations");
    add_common(*bench, cfg);
    add_ga_options(*bench, cfg);
    bench->add_option("--operators", cfg.operators, "Comma-separated crossover list");
    bench->add_option("--populations", cfg.populations, "Number of shared initial populations");
    bench->add_option("--workers", cfg.workers, "Worker threads");
    bench->add_option("--px-grid", cfg.px_grid, "Sweep Px over a comma list, or 'standard'");
    bench->add_option("--pm-grid", cfg.pm_grid, "Sweep Pm over a comma list, or 'standard'");

    auto* exact = app.add_subcommand("exact", "Exhaustive optimum for small instances");
    add_common(*exact, cfg);
    exact->add_option("--max-n", cfg.max_n, "Refuse instances larger than this");
    exact->add_option("--out", cfg.out, "Optional JSON result path");

    auto* validate = app.add_subcommand("validate", "Check an instance and optionally a tour file");
    add_common(*validate, cfg);
    validate->add_option("--tour", cfg.tour, "TSPLIB tour file to check against the instance");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "tspga: error: " << one_line(e.what()) << '\n';
        return 2;
    }

    try {
        if (solve->parsed()) return do_solve(cfg, out, err);
        if (bench->parsed()) return do_bench(cfg, out, err);
        if (exact->parsed()) return do_exact(cfg, out);
        return do_validate(cfg, out, err);
    } catch (const std::exception& e) {
        err << "tspga: error: " << one_line(e.what()) << '\n';
        return 1;
    }
}

}  // namespace tspga

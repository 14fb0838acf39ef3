#include "tspga/bench.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include <json.hpp>

namespace tspga {

void ExperimentPlan::validate() const {
    if (!instance) throw std::invalid_argument("plan has no instance");
    if (operators.empty()) throw std::invalid_argument("plan needs at least one operator");
    if (population_count == 0) throw std::invalid_argument("plan needs at least one population");
    for (const auto& op : operators) op.validate();
    base.validate();
}

std::vector<double> standard_probability_grid() {
    std::vector<double> grid;
    for (int k = 10; k >= 0; --k) grid.push_back(k / 10.0);
    return grid;
}

std::uint64_t population_seed(std::uint64_t master_seed, std::size_t index) {
    return derive_seed(master_seed, index);
}

Population shared_population(const ExperimentPlan& plan, std::size_t index) {
    auto streams = RunStreams::from_seed(population_seed(plan.master_seed, index));
    return init_population(*plan.instance, plan.base.init, plan.base.population_size, streams.init);
}

Aggregates summarize(std::span<const RunRecord> records) {
    if (records.empty()) throw std::invalid_argument("cannot summarize zero runs");
    Aggregates agg;
    const std::size_t count = records.size();
    const std::size_t length = records.front().trace.size();

    agg.best = records.front().best_length;
    double sum = 0.0;
    agg.mean_trace.assign(length, 0.0);
    for (const auto& r : records) {
        if (r.trace.size() != length) throw std::invalid_argument("runs have traces of different length");
        agg.best = std::min(agg.best, r.best_length);
        sum += r.best_length;
        for (std::size_t g = 0; g < length; ++g) agg.mean_trace[g] += r.trace[g];
    }
    agg.mean = sum / static_cast<double>(count);
    for (auto& v : agg.mean_trace) v /= static_cast<double>(count);

    if (count > 1) {
        double ss = 0.0;
        for (const auto& r : records) ss += (r.best_length - agg.mean) * (r.best_length - agg.mean);
        agg.std = std::sqrt(ss / static_cast<double>(count - 1));
    }
    return agg;
}

BenchReport run_comparison(const ExperimentPlan& plan) {
    plan.validate();
    const std::size_t pops = plan.population_count;
    const std::size_t ops = plan.operators.size();

    std::vector<Population> initial;
    initial.reserve(pops);
    for (std::size_t p = 0; p < pops; ++p) initial.push_back(shared_population(plan, p));

    BenchReport report;
    report.instance_name = plan.instance->name();
    report.master_seed = plan.master_seed;
    report.population_count = pops;
    report.base = plan.base;
    report.operators.resize(ops);
    for (std::size_t k = 0; k < ops; ++k) {
        report.operators[k].crossover = plan.operators[k];
        report.operators[k].records.resize(pops);
    }

    std::atomic<std::size_t> next_job{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t job = next_job.fetch_add(1);
            if (job >= ops * pops) return;
            const std::size_t k = job / pops;
            const std::size_t p = job % pops;
            try {
                GaParams params = plan.base;
                params.crossover = plan.operators[k];
                params.seed = population_seed(plan.master_seed, p);
                report.operators[k].records[p] = run_ga(*plan.instance, params, initial[p]);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next_job = ops * pops;
            }
        }
    };

    const std::size_t threads = std::max<std::size_t>(1, std::min(plan.workers, ops * pops));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);

    for (auto& op : report.operators) op.summary = summarize(op.records);
    return report;
}

std::vector<SweepPoint> run_sweep(const ExperimentPlan& plan, std::span<const double> px_values,
                                  std::span<const double> pm_values) {
    std::vector<SweepPoint> out;
    for (const double px : px_values) {
        for (const double pm : pm_values) {
            ExperimentPlan point = plan;
            point.base.crossover_prob = px;
            point.base.mutation_prob = pm;
            out.push_back({px, pm, run_comparison(point)});
        }
    }
    return out;
}

ReportFormat parse_report_format(std::string_view name) {
    if (name == "csv") return ReportFormat::Csv;
    if (name == "json") return ReportFormat::Json;
    throw std::invalid_argument("unknown format '" + std::string(name) + "' (expected csv|json)");
}

namespace {

// Shortest representation that parses back to the same double.
std::string number(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

}  // namespace

std::string summary_csv(const BenchReport& report) {
    std::string out = "operator,best,mean,std\n";
    for (const auto& op : report.operators) {
        out += std::string(to_string(op.crossover.kind)) + ',' + number(op.summary.best) + ',' +
               number(op.summary.mean) + ',' + number(op.summary.std) + '\n';
    }
    return out;
}

std::string trace_csv(const BenchReport& report) {
    std::string out = "operator,population,generation,best_length\n";
    for (const auto& op : report.operators) {
        const std::string name(to_string(op.crossover.kind));
        for (std::size_t p = 0; p < op.records.size(); ++p) {
            const auto& trace = op.records[p].trace;
            for (std::size_t g = 0; g < trace.size(); ++g) {
                out += name;
                out += ',';
                out += std::to_string(p);
                out += ',';
                out += std::to_string(g);
                out += ',';
                out += number(trace[g]);
                out += '\n';
            }
        }
    }
    return out;
}

namespace {

using nlohmann::json;

json params_json(const GaParams& p) {
    return json{{"population", p.population_size},
                {"crossover", to_string(p.crossover.kind)},
                {"upmx_p", p.crossover.upmx_p},
                {"px", p.crossover_prob},
                {"mutation", to_string(p.mutation)},
                {"pm", p.mutation_prob},
                {"iterations", p.iterations},
                {"init", to_string(p.init)},
                {"seed", p.seed}};
}

GaParams params_from(const json& j) {
    GaParams p;
    p.population_size = j.at("population").get<std::size_t>();
    p.crossover.kind = parse_crossover_kind(j.at("crossover").get<std::string>());
    p.crossover.upmx_p = j.at("upmx_p").get<double>();
    p.crossover_prob = j.at("px").get<double>();
    p.mutation = parse_mutation_kind(j.at("mutation").get<std::string>());
    p.mutation_prob = j.at("pm").get<double>();
    p.iterations = j.at("iterations").get<std::size_t>();
    p.init = parse_init_strategy(j.at("init").get<std::string>());
    p.seed = j.at("seed").get<std::uint64_t>();
    return p;
}

json record_json(const RunRecord& r) {
    return json{{"seed", r.seed},
                {"best_length", r.best_length},
                {"best_tour", r.best_tour.order},
                {"trace", r.trace},
                {"generations_run", r.generations_run},
                {"wall_time", r.wall_time.count()}};
}

RunRecord record_from(const json& j) {
    RunRecord r;
    r.seed = j.at("seed").get<std::uint64_t>();
    r.best_length = j.at("best_length").get<double>();
    r.best_tour.order = j.at("best_tour").get<std::vector<City>>();
    r.best_tour.length = r.best_length;
    r.trace = j.at("trace").get<std::vector<double>>();
    r.generations_run = j.at("generations_run").get<std::size_t>();
    r.wall_time = std::chrono::duration<double>(j.at("wall_time").get<double>());
    return r;
}

}  // namespace

std::string report_to_json(const BenchReport& report) {
    json ops = json::array();
    for (const auto& op : report.operators) {
        json records = json::array();
        for (const auto& r : op.records) records.push_back(record_json(r));
        ops.push_back(json{{"operator", to_string(op.crossover.kind)},
                           {"upmx_p", op.crossover.upmx_p},
                           {"best", op.summary.best},
                           {"mean", op.summary.mean},
                           {"std", op.summary.std},
                           {"mean_trace", op.summary.mean_trace},
                           {"records", std::move(records)}});
    }
    const json doc{{"instance_name", report.instance_name},
                   {"master_seed", report.master_seed},
                   {"population_count", report.population_count},
                   {"base", params_json(report.base)},
                   {"operators", std::move(ops)}};
    return doc.dump(1) + "\n";
}

BenchReport report_from_json(std::string_view text) {
    const json doc = json::parse(text);
    BenchReport report;
    report.instance_name = doc.at("instance_name").get<std::string>();
    report.master_seed = doc.at("master_seed").get<std::uint64_t>();
    report.population_count = doc.at("population_count").get<std::size_t>();
    report.base = params_from(doc.at("base"));
    for (const auto& o : doc.at("operators")) {
        OperatorReport op;
        op.crossover.kind = parse_crossover_kind(o.at("operator").get<std::string>());
        op.crossover.upmx_p = o.at("upmx_p").get<double>();
        op.summary.best = o.at("best").get<double>();
        op.summary.mean = o.at("mean").get<double>();
        op.summary.std = o.at("std").get<double>();
        op.summary.mean_trace = o.at("mean_trace").get<std::vector<double>>();
        for (const auto& r : o.at("records")) op.records.push_back(record_from(r));
        report.operators.push_back(std::move(op));
    }
    return report;
}

std::vector<ExportedFile> export_report(const BenchReport& report, ReportFormat format) {
    if (format == ReportFormat::Json) return {{"json", report_to_json(report)}};
    return {{"summary.csv", summary_csv(report)}, {"trace.csv", trace_csv(report)}};
}

}  // namespace tspga

#pragma once

// Operator comparison on shared seeded initial populations, with
// summary statistics and CSV/JSON export.
//
// Population p of a plan is seeded with derive_seed(master_seed, p). That
// seed builds the generation-0 population once and also seeds the evolution
// streams of every run that starts from it, so all operators see the same
// initial members and the same selection/mutation/coin streams. Only the
// crossover differs between the runs of one population.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tspga/engine.hpp"

namespace tspga {

struct ExperimentPlan {
    std::shared_ptr<const TspInstance> instance;
    std::vector<CrossoverSpec> operators;
    GaParams base;  ///< base.crossover and base.seed are ignored
    std::size_t population_count = 50;
    std::uint64_t master_seed = 1;
    std::size_t workers = 1;

    void validate() const;
};

/// The probability grid {1, 0.9, ..., 0.1, 0} used for Px and Pm sweeps.
std::vector<double> standard_probability_grid();

struct Aggregates {
    double best = 0.0;
    double mean = 0.0;
    double std = 0.0;  ///< sample standard deviation (n - 1 denominator)
    std::vector<double> mean_trace;

    friend bool operator==(const Aggregates&, const Aggregates&) = default;
};

struct OperatorReport {
    CrossoverSpec crossover;
    std::vector<RunRecord> records;  ///< index = population index
    Aggregates summary;

    friend bool operator==(const OperatorReport&, const OperatorReport&) = default;
};

struct BenchReport {
    std::string instance_name;
    std::uint64_t master_seed = 0;
    std::size_t population_count = 0;
    GaParams base;
    std::vector<OperatorReport> operators;  ///< in plan order

    friend bool operator==(const BenchReport&, const BenchReport&) = default;
};

/// Seed of population `index` of a plan.
std::uint64_t population_seed(std::uint64_t master_seed, std::size_t index);

/// Generation-0 population `index` of `plan`.
Population shared_population(const ExperimentPlan& plan, std::size_t index);

/// min / mean / sample std of final best lengths, plus the elementwise mean
/// trace. Throws on an empty list or on traces of unequal length.
Aggregates summarize(std::span<const RunRecord> records);

/// Runs every (operator, population) pair on `plan.workers` threads.
BenchReport run_comparison(const ExperimentPlan& plan);

struct SweepPoint {
    double px = 0.0;
    double pm = 0.0;
    BenchReport report;
};

/// run_comparison for every (px, pm) combination, px-major.
std::vector<SweepPoint> run_sweep(const ExperimentPlan& plan, std::span<const double> px_values,
                                  std::span<const double> pm_values);

enum class ReportFormat { Csv, Json };

ReportFormat parse_report_format(std::string_view name);

/// "operator,best,mean,std" with one row per operator.
std::string summary_csv(const BenchReport& report);
/// "operator,population,generation,best_length" with one row per trace entry.
std::string trace_csv(const BenchReport& report);

std::string report_to_json(const BenchReport& report);
BenchReport report_from_json(std::string_view text);

struct ExportedFile {
    std::string suffix;  ///< e.g. "summary.csv", "trace.csv", "json"
    std::string content;
};

/// CSV yields the summary and trace tables; JSON yields a single document.
std::vector<ExportedFile> export_report(const BenchReport& report, ReportFormat format);

}  // namespace tspga

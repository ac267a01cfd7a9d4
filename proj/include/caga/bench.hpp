#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "caga/engine.hpp"
#include "caga/truss.hpp"

namespace caga {

/// Everything needed to reproduce one run.
struct RunConfig {
    std::string problem = "f1";  ///< f1..f10, a benchmark truss name, or a truss model file
    GaConfig ga;
    std::uint64_t seed = 1;
    truss::ConstraintHandling constraints;  ///< truss problems only

    void validate() const;
};

bool is_test_function(std::string_view problem);
std::unique_ptr<Problem> make_problem(const RunConfig& config);

/// Published baseline for a test function ("f1".."f10") or benchmark truss.
RunConfig baseline_config(std::string_view problem);

RunResult run_once(const RunConfig& config);

struct SuiteStats {
    std::vector<double> values;  ///< reported raw objective per run, seed order
    double mean = 0.0;
    double stddev = 0.0;         ///< population (divide by n)
    double best = 0.0;           ///< extremal w.r.t. the sense
    std::size_t feasible_runs = 0;
};

SuiteStats summarize(std::span<const double> values, Sense sense);

struct SuiteResult {
    std::string problem;
    Sense sense = Sense::minimize;
    std::vector<RunResult> runs;  ///< runs[i] used seed base_seed + i
    SuiteStats stats;
};

/// n_runs independent runs with seeds base_seed .. base_seed + n_runs - 1,
/// spread over `threads` workers (0 = hardware concurrency). The result does
/// not depend on the thread count.
SuiteResult run_suite(const RunConfig& config, int n_runs, std::uint64_t base_seed, unsigned threads = 0);

/// `generation,run_id,best_so_far_raw`, ordered by run then generation.
std::string history_csv(std::span<const RunResult> runs);
void export_history(std::span<const RunResult> runs, const std::filesystem::path& path);

/// Applies one `key = value` setting (same names as the CLI flags).
void apply_setting(RunConfig& config, std::string_view key, std::string_view value);
/// Keys accepted by apply_setting.
const std::vector<std::string>& setting_keys();

/// `key = value` lines, '#' comments.
std::vector<std::pair<std::string, std::string>> parse_settings(std::string_view text);
std::vector<std::pair<std::string, std::string>> load_settings(const std::filesystem::path& path);

/// "1..20", "0.1..0.9:0.2" or "1,2,5".
std::vector<std::string> expand_values(std::string_view spec);

struct SweepPoint {
    std::string value;
    SuiteStats stats;
};

/// One suite per value of `parameter`, everything else held at `base`.
std::vector<SweepPoint> run_sweep(const RunConfig& base, std::string_view parameter,
                                  std::span<const std::string> values, int n_runs, std::uint64_t base_seed,
                                  unsigned threads = 0);

/// Shortest round-trip decimal text.
std::string format_number(double v);

}  // namespace caga

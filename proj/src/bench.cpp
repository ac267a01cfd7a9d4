#include "caga/bench.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <thread>

#include "caga/errors.hpp"
#include "caga/objectives.hpp"

namespace caga {

void RunConfig::validate() const {
    ga.validate();
    if (!is_test_function(problem)) constraints.validate();
}

bool is_test_function(std::string_view problem) {
    try {
        parse_objective_id(problem);
        return true;
    } catch (const ConfigError&) {
        return false;
    }
}

std::unique_ptr<Problem> make_problem(const RunConfig& config) {
    if (is_test_function(config.problem)) return std::make_unique<TestFunction>(parse_objective_id(config.problem));
    return std::make_unique<truss::TrussProblem>(truss::resolve_model(config.problem), config.constraints);
}

RunConfig baseline_config(std::string_view problem) {
    RunConfig c;
    c.problem = std::string(problem);
    GaConfig& ga = c.ga;
    ga.population = 5;
    ga.crossover = {CrossoverKind::variable_to_variable};
    ga.regular = RegularMutationPlan{.period = 1, .count = 1, .count_max = 0, .version = {MutationVersion::gaussian}};
    ga.best = BestMutationPlan{.period = 2, .version = {MutationVersion::gaussian}};
    ga.hyper.reset();
    ga.reinit = ReinitPlan{.period = 3, .start_fraction = 0.25};

    if (is_test_function(problem)) {
        const int id = parse_objective_id(problem);
        c.problem = "f" + std::to_string(id);
        if (id <= 2) {
            ga.evaluation_budget = 10000;
        } else if (id <= 7) {
            ga.evaluation_budget = 20000;
        } else {
            ga.evaluation_budget = 5000;
            ga.reinit->start_fraction = 0.5;
        }
        if (id == 2) {
            ga.crossover = {CrossoverKind::one_point};
            ga.regular = RegularMutationPlan{.period = 1, .count = 5, .count_max = 0,
                                             .version = {MutationVersion::ordinary}};
            ga.best = BestMutationPlan{.period = 10, .version = {MutationVersion::ordinary}};
            ga.reinit->start_fraction = 0.75;
        }
        return c;
    }

    int generations = 0;
    if (problem == "ten_bar") {
        generations = 2100;
    } else if (problem == "seventeen_bar") {
        generations = 2500;
    } else {
        throw ConfigError("no baseline for '" + std::string(problem) + "' (expected f1..f10, ten_bar, seventeen_bar)");
    }
    const Staged<MutationVersion> staged_version{MutationVersion::ordinary, MutationVersion::gaussian, 1.0 / 3.0};
    ga.evaluation_budget = static_cast<long>(generations) * ga.population;
    ga.crossover = {CrossoverKind::one_point, CrossoverKind::variable_to_variable, 1.0 / 3.0};
    ga.regular = RegularMutationPlan{.period = 1, .count = 1, .count_max = 0, .version = staged_version};
    ga.best = BestMutationPlan{.period = 5, .version = staged_version};
    ga.hyper = HyperMutationPlan{.period = 10, .archive_capacity = 50};
    ga.reinit = ReinitPlan{.period = 3, .start_fraction = 0.25};
    return c;
}

RunResult run_once(const RunConfig& config) {
    config.validate();
    const auto problem = make_problem(config);
    return run(config.ga, *problem, config.seed);
}

SuiteStats summarize(std::span<const double> values, Sense sense) {
    SuiteStats s;
    s.values.assign(values.begin(), values.end());
    if (values.empty()) return s;
    const double n = static_cast<double>(values.size());
    double sum = 0.0;
    for (double v : values) sum += v;
    s.mean = sum / n;
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.stddev = std::sqrt(ss / n);
    s.best = sense == Sense::maximize ? *std::max_element(values.begin(), values.end())
                                      : *std::min_element(values.begin(), values.end());
    return s;
}

SuiteResult run_suite(const RunConfig& config, int n_runs, std::uint64_t base_seed, unsigned threads) {
    if (n_runs < 1) throw ConfigError("run count must be at least 1");
    config.validate();
    const auto problem = make_problem(config);

    SuiteResult suite;
    suite.problem = problem->name();
    suite.sense = problem->sense();
    suite.runs.resize(static_cast<std::size_t>(n_runs));

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(n_runs));

    // Workers claim run indices; each run owns its rng and lattice and writes
    // only its own slot.
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    auto worker = [&] {
        for (int i = next++; i < n_runs && !failed; i = next++) {
            try {
                suite.runs[static_cast<std::size_t>(i)] =
                    run(config.ga, *problem, base_seed + static_cast<std::uint64_t>(i));
            } catch (...) {
                if (!failed.exchange(true)) failure = std::current_exception();
            }
        }
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);

    std::vector<double> finals;
    finals.reserve(suite.runs.size());
    std::size_t feasible = 0;
    for (const RunResult& r : suite.runs) {
        finals.push_back(r.reported().eval.raw);
        if (r.best_feasible) ++feasible;
    }
    suite.stats = summarize(finals, suite.sense);
    suite.stats.feasible_runs = feasible;
    return suite;
}

std::string format_number(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc()) throw Error("number formatting failed");
    return std::string(buf, ptr);
}

std::string history_csv(std::span<const RunResult> runs) {
    std::string out = "generation,run_id,best_so_far_raw\n";
    for (std::size_t run_id = 0; run_id < runs.size(); ++run_id) {
        const auto& history = runs[run_id].best_raw_history;
        for (std::size_t g = 0; g < history.size(); ++g) {
            out += std::to_string(g);
            out += ',';
            out += std::to_string(run_id);
            out += ',';
            out += format_number(history[g]);
            out += '\n';
        }
    }
    return out;
}

void export_history(std::span<const RunResult> runs, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out << history_csv(runs);
    if (!out) throw IoError("failed writing '" + path.string() + "'");
}

std::vector<SweepPoint> run_sweep(const RunConfig& base, std::string_view parameter,
                                  std::span<const std::string> values, int n_runs, std::uint64_t base_seed,
                                  unsigned threads) {
    std::vector<SweepPoint> points;
    points.reserve(values.size());
    for (const std::string& value : values) {
        RunConfig config = base;
        apply_setting(config, parameter, value);
        points.push_back(SweepPoint{value, run_suite(config, n_runs, base_seed, threads).stats});
    }
    return points;
}

}  // namespace caga

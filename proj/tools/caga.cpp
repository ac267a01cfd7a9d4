#include <chrono>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "caga/bench.hpp"
#include "caga/ca_demo.hpp"
#include "caga/errors.hpp"
#include "caga/objectives.hpp"
#include "caga/truss.hpp"

namespace {

using caga::RunConfig;
using Settings = std::vector<std::pair<std::string, std::string>>;

// Options shared by bench, truss and sweep. Every GA flag maps onto a setting
// key so that the config file and the command line go through the same code.
struct CommonOptions {
    int runs = 60;
    std::uint64_t seed = 1;
    unsigned threads = 0;
    std::string config_file;
    std::string summary_file;
    std::map<std::string, std::string> flags;
};

void add_common(CLI::App* cmd, CommonOptions& opts, bool truss) {
    cmd->add_option("--runs", opts.runs, "Independent runs")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", opts.seed, "Seed of the first run; run i uses seed + i");
    cmd->add_option("--threads", opts.threads, "Worker threads (0 = all cores)");
    cmd->add_option("--config", opts.config_file, "key = value settings file")->check(CLI::ExistingFile);
    cmd->add_option("--summary", opts.summary_file, "Write summary statistics as JSON");

    static const std::vector<std::pair<std::string, std::string>> ga_flags{
        {"pop", "Cells in the lattice"},
        {"evals", "Evaluation budget per run"},
        {"generations", "Budget as generations (times --pop)"},
        {"crossover", "one-point | two-point | var-to-var"},
        {"crossover-late", "Crossover after the switch (or none)"},
        {"crossover-switch", "Run fraction at which the crossover switches"},
        {"regular-period", "Regular mutation every N generations (off disables)"},
        {"regular-count", "Regular mutation rounds per firing"},
        {"regular-count-max", "Upper bound for a random round count"},
        {"regular-version", "ordinary | gaussian"},
        {"regular-version-late", "Regular mutation version after the switch"},
        {"regular-switch", "Run fraction for the regular mutation switch"},
        {"best-period", "Best-cell mutation every N generations (off disables)"},
        {"best-version", "ordinary | gaussian"},
        {"best-version-late", "Best-cell mutation version after the switch"},
        {"best-switch", "Run fraction for the best-cell mutation switch"},
        {"hyper-period", "Hyper-mutation every N generations (off disables)"},
        {"archive-capacity", "Hyper-mutation archive size"},
        {"reinit-period", "Reinitialize every N generations (off disables)"},
        {"reinit-start", "Run fraction after which reinitialization starts"},
        {"disable", "Comma list of regular,best,hyper,reinit,mutation (or none)"},
    };
    static const std::vector<std::pair<std::string, std::string>> truss_flags{
        {"penalty-d-early", "Displacement penalty v1,v2,P1,P2,P3 (early)"},
        {"penalty-d-late", "Displacement penalty v1,v2,P1,P2,P3 (late)"},
        {"penalty-s-early", "Stress penalty v1,v2,P1,P2,P3 (early)"},
        {"penalty-s-late", "Stress penalty v1,v2,P1,P2,P3 (late)"},
        {"penalty-switch", "Run fraction for the penalty switch"},
        {"tolerance", "Allowable multipliers, start:multiplier,..."},
        {"feasibility-tol", "Largest true violation counted as feasible"},
    };
    auto add = [&](const std::vector<std::pair<std::string, std::string>>& list) {
        for (const auto& [key, help] : list) {
            cmd->add_option_function<std::string>(
                "--" + key, [&opts, k = key](const std::string& v) { opts.flags[k] = v; }, help);
        }
    };
    add(ga_flags);
    if (truss) add(truss_flags);
}

// Baseline, then the config file, then command-line flags.
RunConfig configure(RunConfig config, const CommonOptions& opts) {
    Settings settings;
    if (!opts.config_file.empty()) settings = caga::load_settings(opts.config_file);
    for (const auto& [key, value] : settings) {
        if (key == "fn" || key == "model") {
            throw caga::ConfigError("config file may not change the problem ('" + key + "')");
        }
        caga::apply_setting(config, key, value);
    }
    if (auto pop = opts.flags.find("pop"); pop != opts.flags.end()) {
        caga::apply_setting(config, pop->first, pop->second);
    }
    for (const auto& [key, value] : opts.flags) {
        if (key != "pop") caga::apply_setting(config, key, value);
    }
    config.seed = opts.seed;
    config.validate();
    return config;
}

RunConfig baseline_for_model(const std::string& model) {
    const auto names = caga::truss::benchmark_names();
    if (std::find(names.begin(), names.end(), model) != names.end()) return caga::baseline_config(model);
    // A user model file gets the ten-bar operator schedule.
    RunConfig config = caga::baseline_config("ten_bar");
    config.problem = model;
    caga::truss::resolve_model(model);
    return config;
}

std::string fmt(double v) {
    std::ostringstream out;
    out << std::setprecision(8) << v;
    return out.str();
}

void print_stats(const caga::SuiteResult& suite, int runs, double seconds, bool truss) {
    const auto& s = suite.stats;
    const auto row = [](const std::string& label, const std::string& value) {
        std::cout << "  " << std::left << std::setw(16) << label << value << '\n';
    };
    std::cout << suite.problem << " (" << (suite.sense == caga::Sense::maximize ? "maximize" : "minimize") << ")\n";
    row("runs", std::to_string(runs));
    row("evaluations", std::to_string(suite.runs.front().evaluations) + " per run");
    row("mean", fmt(s.mean));
    row("stddev", fmt(s.stddev));
    row("best", fmt(s.best));
    if (truss) {
        row("feasible runs", std::to_string(s.feasible_runs) + " / " + std::to_string(runs));
        std::optional<double> best_feasible;
        for (const auto& r : suite.runs) {
            if (r.best_feasible && (!best_feasible || r.best_feasible->eval.raw < *best_feasible)) {
                best_feasible = r.best_feasible->eval.raw;
            }
        }
        row("best feasible", best_feasible ? fmt(*best_feasible) : std::string("none"));
    }
    std::ostringstream time;
    time << std::fixed << std::setprecision(2) << seconds << " s";
    row("wall time", time.str());
}

nlohmann::json stats_json(const caga::SuiteStats& s) {
    return {{"mean", s.mean}, {"stddev", s.stddev}, {"best", s.best}, {"feasible_runs", s.feasible_runs},
            {"values", s.values}};
}

void write_json(const std::string& path, const nlohmann::json& doc) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw caga::IoError("cannot open '" + path + "' for writing");
    out << doc.dump(2) << '\n';
    if (!out) throw caga::IoError("failed writing '" + path + "'");
}

int run_suite_command(const RunConfig& config, const CommonOptions& opts, const std::string& out_path,
                      bool truss) {
    const auto start = std::chrono::steady_clock::now();
    const caga::SuiteResult suite = caga::run_suite(config, opts.runs, opts.seed, opts.threads);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    print_stats(suite, opts.runs, seconds, truss);
    if (!out_path.empty()) {
        caga::export_history(suite.runs, out_path);
        std::cout << "  history         " << out_path << '\n';
    }
    if (!opts.summary_file.empty()) {
        nlohmann::json doc = stats_json(suite.stats);
        doc["problem"] = suite.problem;
        doc["sense"] = suite.sense == caga::Sense::maximize ? "maximize" : "minimize";
        doc["runs"] = opts.runs;
        doc["base_seed"] = opts.seed;
        doc["evaluations_per_run"] = suite.runs.front().evaluations;
        nlohmann::json best = nlohmann::json::array();
        for (const auto& r : suite.runs) {
            nlohmann::json entry{{"seed", r.seed}, {"raw", r.reported().eval.raw}, {"design", r.reported().design}};
            if (r.best_feasible) entry["best_feasible"] = r.best_feasible->eval.raw;
            best.push_back(std::move(entry));
        }
        doc["per_run"] = std::move(best);
        write_json(opts.summary_file, doc);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cellular-automata genetic algorithm benchmarks"};
    app.require_subcommand(1);

    CommonOptions bench_opts;
    std::string bench_fn;
    std::string bench_out;
    auto* bench = app.add_subcommand("bench", "Run a test function suite");
    bench->add_option("--fn", bench_fn, "Test function f1..f10")->required();
    bench->add_option("--out", bench_out, "History CSV");
    add_common(bench, bench_opts, false);

    CommonOptions truss_opts;
    truss_opts.runs = 30;
    std::string truss_model;
    std::string truss_out;
    auto* truss = app.add_subcommand("truss", "Run a truss sizing suite");
    truss->add_option("--model", truss_model, "ten_bar, seventeen_bar or a model file")->required();
    truss->add_option("--out", truss_out, "History CSV");
    add_common(truss, truss_opts, true);

    CommonOptions sweep_opts;
    sweep_opts.runs = 30;
    std::string sweep_fn;
    std::string sweep_vary;
    std::string sweep_out;
    auto* sweep = app.add_subcommand("sweep", "Vary one setting from the baseline");
    sweep->add_option("--fn", sweep_fn, "Test function f1..f10 or truss model")->required();
    sweep->add_option("--vary", sweep_vary, "key=values, e.g. best-period=1..20")->required();
    sweep->add_option("--out", sweep_out, "Sweep table CSV");
    add_common(sweep, sweep_opts, true);

    int ca_width = 200;
    int ca_steps = 50;
    double ca_perturb = 0.0;
    double ca_density = 0.5;
    std::uint64_t ca_seed = 1;
    std::string ca_out;
    std::string ca_text;
    bool ca_single = false;
    auto* demo = app.add_subcommand("demo-ca", "Evolve the rule 165 automaton and write a PBM image");
    demo->add_option("--width", ca_width, "Cells per row")->check(CLI::PositiveNumber);
    demo->add_option("--steps", ca_steps, "Rows after the initial one")->check(CLI::NonNegativeNumber);
    demo->add_option("--perturb", ca_perturb, "Mean random flips per step")->check(CLI::NonNegativeNumber);
    demo->add_option("--density", ca_density, "Fraction of ones in the initial row")->check(CLI::Range(0.0, 1.0));
    demo->add_flag("--single", ca_single, "Start from a single black cell");
    demo->add_option("--seed", ca_seed, "Random seed");
    demo->add_option("--out", ca_out, "PBM output")->required();
    demo->add_option("--text", ca_text, "Also write a 0/1 text dump");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*bench) {
            if (!caga::is_test_function(bench_fn)) throw caga::ConfigError("unknown test function '" + bench_fn + "'");
            return run_suite_command(configure(caga::baseline_config(bench_fn), bench_opts), bench_opts, bench_out, false);
        }
        if (*truss) {
            const RunConfig config = configure(baseline_for_model(truss_model), truss_opts);
            return run_suite_command(config, truss_opts, truss_out, true);
        }
        if (*sweep) {
            const auto eq = sweep_vary.find('=');
            if (eq == std::string::npos) throw caga::ConfigError("--vary expects key=values");
            const std::string key = sweep_vary.substr(0, eq);
            const auto values = caga::expand_values(sweep_vary.substr(eq + 1));
            const RunConfig base = configure(caga::is_test_function(sweep_fn) ? caga::baseline_config(sweep_fn)
                                                                              : baseline_for_model(sweep_fn),
                                             sweep_opts);
            const auto points = caga::run_sweep(base, key, values, sweep_opts.runs, sweep_opts.seed, sweep_opts.threads);

            const int width = static_cast<int>(std::max<std::size_t>(12, key.size() + 2));
            std::cout << std::left << std::setw(width) << key << std::setw(16) << "mean" << std::setw(16) << "stddev"
                      << "best\n";
            for (const auto& p : points) {
                std::cout << std::left << std::setw(width) << p.value << std::setw(16) << fmt(p.stats.mean)
                          << std::setw(16) << fmt(p.stats.stddev) << fmt(p.stats.best) << '\n';
            }
            if (!sweep_out.empty()) {
                std::ofstream out(sweep_out, std::ios::binary | std::ios::trunc);
                if (!out) throw caga::IoError("cannot open '" + sweep_out + "' for writing");
                out << key << ",mean,stddev,best\n";
                for (const auto& p : points) {
                    out << p.value << ',' << caga::format_number(p.stats.mean) << ','
                        << caga::format_number(p.stats.stddev) << ',' << caga::format_number(p.stats.best) << '\n';
                }
            }
            if (!sweep_opts.summary_file.empty()) {
                nlohmann::json doc{{"problem", sweep_fn}, {"parameter", key}, {"runs", sweep_opts.runs},
                                   {"base_seed", sweep_opts.seed}};
                nlohmann::json rows = nlohmann::json::array();
                for (const auto& p : points) {
                    nlohmann::json row = stats_json(p.stats);
                    row["value"] = p.value;
                    rows.push_back(std::move(row));
                }
                doc["points"] = std::move(rows);
                write_json(sweep_opts.summary_file, doc);
            }
            return 0;
        }
        if (*demo) {
            caga::Rng rng(ca_seed);
            caga::demo::Row initial;
            if (ca_single) {
                initial.assign(static_cast<std::size_t>(ca_width), 0);
                initial[static_cast<std::size_t>(ca_width / 2)] = 1;
            } else {
                initial = caga::demo::random_row(static_cast<std::size_t>(ca_width), ca_density, rng);
            }
            const auto history = caga::demo::evolve(caga::demo::rule_165(), initial, ca_steps, ca_perturb, rng);
            caga::demo::write_file(ca_out, caga::demo::to_pbm(history));
            if (!ca_text.empty()) caga::demo::write_file(ca_text, caga::demo::to_text(history));
            std::cout << "wrote " << ca_out << " (" << history.width() << " x " << history.rows.size() << ")\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "caga: error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}

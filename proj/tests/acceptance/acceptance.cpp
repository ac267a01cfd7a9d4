// Checks every acceptance criterion at its stated tolerance and prints one
// PASS/FAIL line per check and exits nonzero if any check fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "caga/bench.hpp"
#include "caga/truss.hpp"
#include "properties.hpp"

using namespace caga;

namespace {

constexpr std::uint64_t kSeed = 1;
constexpr double kCmPerInch = 2.54;

const std::vector<double> kTenBarPublished{150.59, 137.91, 48.25, 194.64, 0.65, 98.75, 0.65, 137.24, 0.65, 3.54};
const std::vector<double> kSeventeenBarPublished{67.32, 36.49, 0.65,  91.48, 0.67, 83.15, 0.65,  32.33, 50.65,
                                                 0.67,  24.83, 41.49, 0.65,  54.82, 0.65, 28.16, 40.66};

int failures = 0;

void report(const std::string& id, bool pass, const std::string& detail) {
    std::printf("%s %-4s %s\n", pass ? "PASS" : "FAIL", id.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

SuiteResult suite(const std::string& problem, int runs, double* seconds = nullptr) {
    const auto start = std::chrono::steady_clock::now();
    SuiteResult r = run_suite(baseline_config(problem), runs, kSeed);
    if (seconds) *seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

void mean_check(const std::string& id, const std::string& problem, bool maximize_threshold, double threshold,
                bool strict = false) {
    const double mean = suite(problem, 60).stats.mean;
    const bool pass = maximize_threshold ? mean >= threshold : (strict ? mean < threshold : mean <= threshold);
    report(id, pass,
           problem + " mean over 60 runs " + num(mean) + (maximize_threshold ? " >= " : (strict ? " < " : " <= ")) +
               num(threshold));
}

// Largest |value| / allowable over every constrained quantity.
double worst_ratio(const truss::TrussModel& model, const truss::AnalysisResult& r) {
    double worst = 0.0;
    for (std::size_t dof : model.free_dofs()) {
        worst = std::max(worst, std::fabs(r.displacements[dof]) / model.displacement_limits[dof]);
    }
    for (std::size_t i = 0; i < model.members.size(); ++i) {
        worst = std::max(worst, std::fabs(r.stresses[i]) / model.members[i].stress_limit);
    }
    return worst;
}

std::optional<Solution> best_feasible(const SuiteResult& s) {
    std::optional<Solution> best;
    for (const RunResult& r : s.runs) {
        if (r.best_feasible && (!best || r.best_feasible->eval.raw < best->eval.raw)) best = r.best_feasible;
    }
    return best;
}

void truss_search(const std::string& id, const std::string& name, int runs, double threshold) {
    const SuiteResult s = suite(name, runs);
    const auto best = best_feasible(s);
    if (!best) {
        report(id, false, name + ": no feasible design in " + std::to_string(runs) + " runs");
        return;
    }
    const auto model = truss::benchmark_model(name);
    const double violation = truss::true_violation(model, truss::analyze(model, best->design));
    report(id, best->eval.raw <= threshold && violation <= 1e-4,
           name + " best feasible weight " + num(best->eval.raw) + " <= " + num(threshold) + ", violation " +
               num(violation) + " <= 1e-4 (" + std::to_string(s.stats.feasible_runs) + "/" + std::to_string(runs) +
               " runs feasible, mean " + num(s.stats.mean) + ")");
}

void property(const std::string& id, const std::string& what, const std::function<std::string()>& check) {
    const std::string failure = check();
    report(id, failure.empty(), what + (failure.empty() ? "" : ": " + failure));
}

}  // namespace

int main() {
    // 1
    {
        double seconds = 0.0;
        const SuiteResult s = suite("f1", 60, &seconds);
        report("1a", s.stats.mean >= 0.995, "f1 mean over 60 runs " + num(s.stats.mean) + " >= 0.995");
        report("1b", seconds < 60.0, "f1 suite wall time " + num(seconds) + " s < 60 s");
    }
    // 2
    mean_check("2", "f2", false, 0.30);
    // 3
    mean_check("3a", "f4", false, -6200.0);
    mean_check("3b", "f6", false, 0.05);
    mean_check("3c", "f7", false, 0.01);
    mean_check("3d", "f3", false, 1.0);
    mean_check("3e", "f10", false, -550.0, true);
    // 4
    {
        const std::vector<std::string> disable{"none", "mutation"};
        const auto points = run_sweep(baseline_config("f1"), "disable", disable, 60, kSeed);
        const double drop = points[0].stats.mean - points[1].stats.mean;
        report("4a", drop >= 0.02,
               "f1 mean " + num(points[0].stats.mean) + " with mutation, " + num(points[1].stats.mean) +
                   " without; drop " + num(drop) + " >= 0.02");
    }
    {
        const std::vector<std::string> periods{"1", "50", "100"};
        const auto points = run_sweep(baseline_config("f2"), "regular-period", periods, 60, kSeed);
        bool pass = true;
        std::string detail = "f2 mean by regular-mutation period:";
        for (std::size_t i = 0; i < points.size(); ++i) {
            detail += " " + points[i].value + " -> " + num(points[i].stats.mean);
            if (i > 0 && !(points[i].stats.mean > points[0].stats.mean)) pass = false;
        }
        report("4b", pass, detail + " (longer periods worse than 1)");
    }
    // 5
    truss_search("5a", "ten_bar", 30, 23.2);
    {
        const auto model = truss::benchmark_model("ten_bar");
        const auto r = truss::analyze(model, kTenBarPublished);
        const double rel = std::fabs(r.weight - 22.51) / 22.51;
        report("5b", rel <= 0.005, "published ten-bar areas weigh " + num(r.weight) + ", " + num(100 * rel) +
                                       "% from 22.51 (<= 0.5%)");
        const double worst = worst_ratio(model, r);
        report("5c", worst <= 1.0 + 1e-3, "published ten-bar areas: worst constraint ratio " + num(worst) +
                                              " <= 1.001");
    }
    // 6
    truss_search("6a", "seventeen_bar", 30, 11.8);
    {
        const auto model = truss::benchmark_model("seventeen_bar");
        const auto r = truss::analyze(model, kSeventeenBarPublished);
        const double rel = std::fabs(r.weight - 11.43) / 11.43;
        report("6b", rel <= 0.01, "published seventeen-bar areas weigh " + num(r.weight) + ", " + num(100 * rel) +
                                      "% from 11.43 (<= 1%)");
        double tip = 0.0;
        for (std::size_t n = 0; n < model.nodes.size(); ++n) tip = std::max(tip, std::fabs(r.displacements[2 * n + 1]));
        const double inches = tip / kCmPerInch;
        const double drel = std::fabs(inches - 2.0024) / 2.0024;
        report("6c", drel <= 0.005, "published seventeen-bar critical vertical displacement " + num(inches) +
                                        " in, " + num(100 * drel) + "% from 2.0024 in (<= 0.5%)");
    }
    // 7
    property("7a", "lattice case partition over 100000 neighbourhoods",
             [] { return testing::check_case_partition(100000, 11); });
    property("7b", "sweep order invariance on 1000 random lattices",
             [] { return testing::check_sweep_order_invariance(1000, 12); });
    property("7c", "genome round trip on 10000 random vectors",
             [] { return testing::check_genome_round_trip(10000, 13); });
    property("7d", "genome saturation on 10000 random genomes",
             [] { return testing::check_genome_saturation(10000, 14); });
    property("7e", "operator alphabet closure on 10000 applications",
             [] { return testing::check_operator_closure(10000, 15); });
    property("7f", "stiffness symmetric and positive definite",
             [] { return testing::check_stiffness_symmetric_pd(200, 16); });
    property("7g", "single bar matches PL/EA and P/A to 1e-10",
             [] { return testing::check_single_bar(1000, 17); });
    property("7h", "penalty branches at v1 +- eps and v2 +- eps", [] { return testing::check_penalty_branches(); });
    property("7i", "Macaulay bracket zero when feasible",
             [] { return testing::check_macaulay_zero_when_feasible(1000, 18); });
    property("7j", "demo rule table equals Wolfram rule 165", [] { return testing::check_rule_165(); });
    property("7k", "identical suite invocations export identical CSVs", [] {
        return testing::check_suite_csv_determinism(baseline_config("f1"), 8, kSeed);
    });

    std::printf("%d check(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}

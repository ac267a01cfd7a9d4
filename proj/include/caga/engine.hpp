#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "caga/lattice.hpp"
#include "caga/operators.hpp"
#include "caga/problem.hpp"

namespace caga {

/// Local outcome for one cell given its own and its neighbours' fitness.
enum class RuleCase { survive, cross_with_right, cross_with_left, cross_left_right, all_equal };

const char* to_string(RuleCase rc);

/// Interior-cell rule. Ties count in the centre's favour. Throws
/// EvaluationError on non-finite input.
RuleCase classify(double center, double left, double right);

/// End-of-lattice rule: survive when >= the single neighbour, otherwise
/// cross with it.
RuleCase classify_boundary(double center, double neighbor, bool neighbor_is_right);

/// A choice that may switch once, at a fraction of the run.
template <class T>
struct Staged {
    T early{};
    std::optional<T> late;
    double switch_fraction = 1.0;

    Staged() = default;
    Staged(T value) : early(value) {}
    Staged(T first, T second, double at_fraction) : early(first), late(second), switch_fraction(at_fraction) {}

    T at(const Progress& p) const {
        return (late && p.fraction() >= switch_fraction) ? *late : early;
    }
};

struct RegularMutationPlan {
    int period = 1;
    int count = 1;      ///< rounds per firing
    int count_max = 0;  ///< > count: rounds drawn uniformly from [count, count_max]
    Staged<MutationVersion> version{MutationVersion::gaussian};
};

struct BestMutationPlan {
    int period = 2;
    Staged<MutationVersion> version{MutationVersion::gaussian};
};

struct HyperMutationPlan {
    int period = 10;
    std::size_t archive_capacity = 50;
};

struct ReinitPlan {
    int period = 3;
    double start_fraction = 0.25;  ///< of the total evaluation budget
};

/// Operator schedule and budget of one run. A disengaged optional disables
/// that operator.
struct GaConfig {
    int population = 5;
    long evaluation_budget = 10000;
    Staged<CrossoverKind> crossover{CrossoverKind::variable_to_variable};
    std::optional<RegularMutationPlan> regular = RegularMutationPlan{};
    std::optional<BestMutationPlan> best = BestMutationPlan{};
    std::optional<HyperMutationPlan> hyper;
    std::optional<ReinitPlan> reinit = ReinitPlan{};

    /// Generations including the initial one (generation 0).
    int total_generations() const;
    void validate() const;
};

struct LatticeState {
    Lattice cells;
    int generation = 0;
    int total_generations = 1;
    long evaluations = 0;
    Cell best_so_far;
    std::optional<Cell> best_feasible;
    Archive archive;
};

enum class SweepOrder { left_to_right, right_to_left };

/// One synchronous crossover pass. Every comparison and donor genome comes
/// from `snapshot`, so the visiting order does not change the result.
Lattice sweep(const Lattice& snapshot, CrossoverKind kind, Rng& rng,
              SweepOrder order = SweepOrder::left_to_right);

/// Evaluates every cell. Returns the number of evaluations performed.
long evaluate_lattice(Lattice& cells, const Problem& problem, const Progress& progress);

/// Random population, evaluated once.
LatticeState initialize(const Problem& problem, const GaConfig& config, Rng& rng);

/// One generation: sweep, regular mutation, best mutation, hyper-mutation,
/// evaluation, best-so-far update, reinitialization.
LatticeState step(LatticeState state, const Problem& problem, const GaConfig& config, Rng& rng);

struct Solution {
    Genome genome;
    DesignVector design;
    Evaluation eval;
};

struct RunResult {
    std::uint64_t seed = 0;
    int generations = 0;
    long evaluations = 0;
    std::vector<double> best_fitness_history;  ///< one entry per generation
    std::vector<double> best_raw_history;
    Solution best;
    std::optional<Solution> best_feasible;

    /// Best feasible design if one was seen, otherwise the best overall.
    const Solution& reported() const { return best_feasible ? *best_feasible : best; }
};

RunResult run(const GaConfig& config, const Problem& problem, std::uint64_t seed);

}  // namespace caga

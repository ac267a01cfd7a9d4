#include "caga/engine.hpp"

#include <cmath>
#include <sstream>

#include "caga/errors.hpp"

namespace caga {

const char* to_string(RuleCase rc) {
    switch (rc) {
        case RuleCase::survive: return "survive";
        case RuleCase::cross_with_right: return "cross-with-right";
        case RuleCase::cross_with_left: return "cross-with-left";
        case RuleCase::cross_left_right: return "cross-left-right";
        case RuleCase::all_equal: return "all-equal";
    }
    return "?";
}

namespace {

void require_finite(double v) {
    if (!std::isfinite(v)) throw EvaluationError("non-finite fitness in lattice rule");
}

bool fires(const std::optional<int>& period, int generation) {
    return period && generation % *period == 0;
}

template <class Plan>
std::optional<int> period_of(const std::optional<Plan>& plan) {
    return plan ? std::optional<int>(plan->period) : std::nullopt;
}

Cell evaluate_cell(Cell cell, const Problem& problem, const Progress& progress) {
    const DesignVector x = decode(cell.genome, problem.variables());
    Evaluation e = problem.evaluate(x, progress);
    if (!std::isfinite(e.fitness)) throw EvaluationError(problem.name() + " returned a non-finite fitness");
    cell.eval = e;
    return cell;
}

void record_best(LatticeState& state) {
    const std::size_t idx = best_cell_index(state.cells);
    if (state.cells[idx].fitness() > state.best_so_far.fitness()) state.best_so_far = state.cells[idx];
    for (const Cell& cell : state.cells) {
        if (cell.eval->feasible && (!state.best_feasible || cell.fitness() > state.best_feasible->fitness())) {
            state.best_feasible = cell;
        }
    }
}

}  // namespace

RuleCase classify(double center, double left, double right) {
    require_finite(center);
    require_finite(left);
    require_finite(right);
    if (center == left && center == right) return RuleCase::all_equal;
    const bool beats_left = center >= left;
    const bool beats_right = center >= right;
    if (beats_left && beats_right) return RuleCase::survive;
    if (beats_left) return RuleCase::cross_with_right;
    if (beats_right) return RuleCase::cross_with_left;
    return RuleCase::cross_left_right;
}

RuleCase classify_boundary(double center, double neighbor, bool neighbor_is_right) {
    require_finite(center);
    require_finite(neighbor);
    if (center >= neighbor) return RuleCase::survive;
    return neighbor_is_right ? RuleCase::cross_with_right : RuleCase::cross_with_left;
}

int GaConfig::total_generations() const {
    return static_cast<int>(evaluation_budget / population);
}

void GaConfig::validate() const {
    auto fail = [](const std::string& what) { throw ConfigError(what); };
    if (population < 2) fail("population must be at least 2 cells");
    if (evaluation_budget < population) fail("evaluation budget must cover at least one population");
    auto check_fraction = [&](double f, const char* what) {
        if (!(f >= 0.0 && f <= 1.0)) fail(std::string(what) + " must lie in [0, 1]");
    };
    check_fraction(crossover.switch_fraction, "crossover switch fraction");
    if (regular) {
        if (regular->period < 1) fail("regular mutation period must be >= 1");
        if (regular->count < 1) fail("regular mutation count must be >= 1");
        if (regular->count_max != 0 && regular->count_max < regular->count) {
            fail("regular mutation count range is empty");
        }
        check_fraction(regular->version.switch_fraction, "regular mutation switch fraction");
    }
    if (best) {
        if (best->period < 1) fail("best mutation period must be >= 1");
        check_fraction(best->version.switch_fraction, "best mutation switch fraction");
    }
    if (hyper) {
        if (hyper->period < 1) fail("hyper-mutation period must be >= 1");
        if (hyper->archive_capacity < 1) fail("archive capacity must be >= 1");
    }
    if (reinit) {
        if (reinit->period < 1) fail("reinitialization period must be >= 1");
        check_fraction(reinit->start_fraction, "reinitialization start fraction");
    }
}

Lattice sweep(const Lattice& snapshot, CrossoverKind kind, Rng& rng, SweepOrder order) {
    const std::size_t n = snapshot.size();
    if (n < 2) throw ConfigError("lattice needs at least 2 cells");
    // One private stream per cell, drawn in index order, keeps the result
    // independent of the visiting order.
    std::vector<std::uint64_t> seeds(n);
    for (auto& s : seeds) s = rng();

    Lattice next(n);
    auto update = [&](std::size_t i) {
        const Cell& center = snapshot[i];
        RuleCase rc;
        if (i == 0) {
            rc = classify_boundary(center.fitness(), snapshot[1].fitness(), true);
        } else if (i == n - 1) {
            rc = classify_boundary(center.fitness(), snapshot[n - 2].fitness(), false);
        } else {
            rc = classify(center.fitness(), snapshot[i - 1].fitness(), snapshot[i + 1].fitness());
        }
        Rng local(seeds[i]);
        switch (rc) {
            case RuleCase::survive:
            case RuleCase::all_equal:
                next[i] = center;
                break;
            case RuleCase::cross_with_right:
                next[i] = Cell{crossover(center.genome, snapshot[i + 1].genome, kind, local), std::nullopt};
                break;
            case RuleCase::cross_with_left:
                next[i] = Cell{crossover(center.genome, snapshot[i - 1].genome, kind, local), std::nullopt};
                break;
            case RuleCase::cross_left_right:
                next[i] = Cell{crossover(snapshot[i - 1].genome, snapshot[i + 1].genome, kind, local), std::nullopt};
                break;
        }
    };
    if (order == SweepOrder::left_to_right) {
        for (std::size_t i = 0; i < n; ++i) update(i);
    } else {
        for (std::size_t i = n; i-- > 0;) update(i);
    }
    return next;
}

long evaluate_lattice(Lattice& cells, const Problem& problem, const Progress& progress) {
    for (Cell& cell : cells) cell = evaluate_cell(std::move(cell), problem, progress);
    return static_cast<long>(cells.size());
}

LatticeState initialize(const Problem& problem, const GaConfig& config, Rng& rng) {
    config.validate();
    LatticeState state{
        .cells = {},
        .generation = 0,
        .total_generations = config.total_generations(),
        .evaluations = 0,
        .best_so_far = {},
        .best_feasible = std::nullopt,
        .archive = Archive(config.hyper ? config.hyper->archive_capacity : 1),
    };
    const LayoutPtr layout = make_layout(problem.variables());
    state.cells.reserve(static_cast<std::size_t>(config.population));
    for (int i = 0; i < config.population; ++i) state.cells.push_back(Cell{random_genome(layout, rng), std::nullopt});
    state.evaluations += evaluate_lattice(state.cells, problem, Progress{0, state.total_generations});
    state.best_so_far = state.cells[best_cell_index(state.cells)];
    record_best(state);
    if (config.hyper) state.archive.push(state.best_so_far.genome);
    return state;
}

LatticeState step(LatticeState state, const Problem& problem, const GaConfig& config, Rng& rng) {
    const int g = ++state.generation;
    const Progress progress{g, state.total_generations};

    // The snapshot's best cell is a local maximum, so it survives the sweep
    // in place; best mutation targets that slot.
    const std::size_t best_index = best_cell_index(state.cells);
    Lattice cells = sweep(state.cells, config.crossover.at(progress), rng);

    if (fires(period_of(config.regular), g)) {
        int rounds = config.regular->count;
        if (config.regular->count_max > config.regular->count) {
            rounds = std::uniform_int_distribution<int>(config.regular->count, config.regular->count_max)(rng);
        }
        regular_mutation(cells, rounds, config.regular->version.at(progress), rng);
    }
    if (fires(period_of(config.best), g)) {
        mutate_cell(cells[best_index], config.best->version.at(progress), rng);
    }
    if (fires(period_of(config.hyper), g)) {
        hyper_mutation(cells, state.archive, rng);
    }

    state.evaluations += evaluate_lattice(cells, problem, progress);
    state.cells = std::move(cells);
    record_best(state);
    if (config.hyper) state.archive.push(state.cells[best_cell_index(state.cells)].genome);

    if (config.reinit && g % config.reinit->period == 0) {
        const int start = static_cast<int>(std::ceil(config.reinit->start_fraction * state.total_generations));
        if (g >= start) {
            for (Cell& cell : state.cells) cell = state.best_so_far;
        }
    }
    return state;
}

namespace {

Solution to_solution(const Cell& cell, const Problem& problem) {
    return Solution{cell.genome, decode(cell.genome, problem.variables()), *cell.eval};
}

}  // namespace

RunResult run(const GaConfig& config, const Problem& problem, std::uint64_t seed) {
    config.validate();
    Rng rng(seed);
    LatticeState state = initialize(problem, config, rng);

    RunResult result;
    result.seed = seed;
    const auto total = static_cast<std::size_t>(state.total_generations);
    result.best_fitness_history.reserve(total);
    result.best_raw_history.reserve(total);
    auto record = [&] {
        result.best_fitness_history.push_back(state.best_so_far.fitness());
        result.best_raw_history.push_back(state.best_so_far.eval->raw);
    };
    record();
    while (state.generation + 1 < state.total_generations) {
        state = step(std::move(state), problem, config, rng);
        record();
    }
    result.generations = state.generation + 1;
    result.evaluations = state.evaluations;
    result.best = to_solution(state.best_so_far, problem);
    if (state.best_feasible) result.best_feasible = to_solution(*state.best_feasible, problem);
    return result;
}

}  // namespace caga

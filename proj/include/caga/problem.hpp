#pragma once

#include <span>
#include <string>
#include <vector>

#include "caga/genome.hpp"
#include "caga/lattice.hpp"

namespace caga {

enum class Sense { maximize, minimize };

/// Where a run currently is; schedules that change during a run (penalty
/// parameters, constraint tolerances, operator switches) key off this.
struct Progress {
    int generation = 0;
    int total_generations = 1;

    double fraction() const {
        return total_generations > 0 ? static_cast<double>(generation) / total_generations : 0.0;
    }
};

/// fitness = raw for maximization, -raw for minimization.
inline double to_fitness(double raw, Sense sense) { return sense == Sense::maximize ? raw : -raw; }

/// An optimization problem over a box of gridded real variables.
class Problem {
public:
    virtual ~Problem() = default;

    virtual std::string name() const = 0;
    virtual Sense sense() const = 0;
    virtual const std::vector<VariableSpec>& variables() const = 0;
    virtual Evaluation evaluate(std::span<const double> x, const Progress& progress) const = 0;
};

}  // namespace caga

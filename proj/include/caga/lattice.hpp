#pragma once

#include <optional>
#include <vector>

#include "caga/genome.hpp"

namespace caga {

/// Result of evaluating one design. The engine maximizes `fitness`.
struct Evaluation {
    double raw = 0.0;      ///< objective value in problem units
    double fitness = 0.0;  ///< maximization convention (raw or -raw)
    bool feasible = true;  ///< satisfies the problem's true constraints
};

/// One lattice site. `eval` is empty once the genome has been altered and
/// not yet re-evaluated.
struct Cell {
    Genome genome;
    std::optional<Evaluation> eval;

    bool evaluated() const { return eval.has_value(); }
    double fitness() const { return eval.value().fitness; }
};

using Lattice = std::vector<Cell>;

}  // namespace caga

#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "caga/problem.hpp"

namespace caga {

/// One row of the benchmark table: dimension, per-variable box and
/// resolution (identical for every coordinate), optimization sense.
struct ObjectiveSpec {
    int id = 0;
    int dimension = 0;
    VariableSpec variable;
    Sense sense = Sense::minimize;

    std::vector<VariableSpec> variables() const {
        return std::vector<VariableSpec>(static_cast<std::size_t>(dimension), variable);
    }
};

inline constexpr int kObjectiveCount = 10;

/// Throws ConfigError for ids outside 1..10.
const ObjectiveSpec& objective_spec(int id);

/// Raw value of test function `id` at `x`; StructuralError on wrong dimension.
double objective_value(int id, std::span<const double> x);

Evaluation evaluate_objective(int id, std::span<const double> x);

/// Accepts "f4" or "4".
int parse_objective_id(std::string_view name);

/// Test function `id` as an engine problem.
class TestFunction final : public Problem {
public:
    explicit TestFunction(int id);

    std::string name() const override { return "f" + std::to_string(spec_.id); }
    Sense sense() const override { return spec_.sense; }
    const std::vector<VariableSpec>& variables() const override { return variables_; }
    Evaluation evaluate(std::span<const double> x, const Progress& progress) const override;

    int id() const { return spec_.id; }

private:
    ObjectiveSpec spec_;
    std::vector<VariableSpec> variables_;
};

}  // namespace caga

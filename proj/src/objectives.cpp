#include "caga/objectives.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <numbers>

#include "caga/errors.hpp"

namespace caga {

namespace {

constexpr double pi = std::numbers::pi;

const std::array<ObjectiveSpec, kObjectiveCount> kSpecs{{
    {1, 5, {0.0, 1.0, 0.0001}, Sense::maximize},
    {2, 3, {-5.0, 5.0, 0.00001}, Sense::minimize},
    {3, 15, {-100.0, 100.0, 0.0002}, Sense::minimize},
    {4, 15, {-500.0, 500.0, 1.0}, Sense::minimize},
    {5, 15, {-500.0, 500.0, 0.1}, Sense::minimize},
    {6, 15, {-5.0, 5.0, 0.001}, Sense::minimize},
    {7, 15, {-50.0, 50.0, 0.001}, Sense::minimize},
    {8, 4, {0.0, 100.0, 0.0001}, Sense::maximize},
    {9, 15, {0.0, 10.0, 0.0001}, Sense::maximize},
    {10, 15, {-5.0, 5.0, 0.0001}, Sense::minimize},
}};

// Multimodal peaks; pi inside the sine puts the tallest peak near 0.0668.
double peaks(std::span<const double> x) {
    double f = 1.0;
    for (double xi : x) {
        const double s = std::sin(5.1 * pi * xi + 0.5);
        const double d = xi - 0.0667;
        f *= std::pow(s, 30) * std::exp(-4.0 * std::numbers::ln2 * d * d / 0.64);
    }
    return f;
}

// Printed chained form: 100 (x_{i+1} - x_i)^2, not x_i^2.
double chained_valley(std::span<const double> x) {
    double f = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        const double a = x[i + 1] - x[i];
        const double b = 1.0 - x[i];
        f += 100.0 * a * a + b * b;
    }
    return f;
}

double ackley(std::span<const double> x) {
    const double n = static_cast<double>(x.size());
    double sq = 0.0, cs = 0.0;
    for (double xi : x) {
        sq += xi * xi;
        cs += std::cos(2.0 * pi * xi);
    }
    return 20.0 + std::numbers::e - 20.0 * std::exp(-0.2 * std::sqrt(sq / n)) - std::exp(cs / n);
}

double schwefel(std::span<const double> x) {
    double f = 0.0;
    for (double xi : x) f -= xi * std::sin(std::sqrt(std::fabs(xi)));
    return f;
}

double griewank(std::span<const double> x) {
    double sq = 0.0, prod = 1.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sq += x[i] * x[i];
        prod *= std::cos(x[i] / std::sqrt(static_cast<double>(i + 1)));
    }
    return sq / 4000.0 - prod + 1.0;
}

double rastrigin(std::span<const double> x) {
    double f = 0.0;
    for (double xi : x) f += xi * xi - 10.0 * std::cos(2.0 * pi * xi) + 10.0;
    return f;
}

double sphere(std::span<const double> x) {
    double f = 0.0;
    for (double xi : x) f += xi * xi;
    return f;
}

// Sum over prefixes of P cos(P), P = x_1 * ... * x_j.
double prefix_product_cosine(std::span<const double> x) {
    double f = 0.0, p = 1.0;
    for (double xi : x) {
        p *= xi;
        f += p * std::cos(p);
    }
    return f;
}

double sine_ramp(std::span<const double> x) {
    double f = 0.0;
    for (double xi : x) f += xi * std::sin(10.0 * pi * xi);
    return f;
}

double weighted_sum(std::span<const double> x) {
    double f = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) f += static_cast<double>(i + 1) * x[i];
    return f;
}

}  // namespace

const ObjectiveSpec& objective_spec(int id) {
    if (id < 1 || id > kObjectiveCount) {
        throw ConfigError("unknown test function id " + std::to_string(id) + " (expected 1..10)");
    }
    return kSpecs[static_cast<std::size_t>(id - 1)];
}

double objective_value(int id, std::span<const double> x) {
    const ObjectiveSpec& spec = objective_spec(id);
    if (x.size() != static_cast<std::size_t>(spec.dimension)) {
        throw StructuralError("f" + std::to_string(id) + " expects " + std::to_string(spec.dimension) +
                              " variables, got " + std::to_string(x.size()));
    }
    switch (id) {
        case 1: return peaks(x);
        case 2: return chained_valley(x);
        case 3: return ackley(x);
        case 4: return schwefel(x);
        case 5: return griewank(x);
        case 6: return rastrigin(x);
        case 7: return sphere(x);
        case 8: return prefix_product_cosine(x);
        case 9: return sine_ramp(x);
        default: return weighted_sum(x);
    }
}

Evaluation evaluate_objective(int id, std::span<const double> x) {
    const double raw = objective_value(id, x);
    if (!std::isfinite(raw)) throw EvaluationError("f" + std::to_string(id) + " produced a non-finite value");
    return Evaluation{raw, to_fitness(raw, objective_spec(id).sense), true};
}

int parse_objective_id(std::string_view name) {
    if (!name.empty() && (name.front() == 'f' || name.front() == 'F')) name.remove_prefix(1);
    int id = 0;
    const auto [ptr, ec] = std::from_chars(name.data(), name.data() + name.size(), id);
    if (ec != std::errc() || ptr != name.data() + name.size()) {
        throw ConfigError("unknown test function '" + std::string(name) + "'");
    }
    objective_spec(id);
    return id;
}

TestFunction::TestFunction(int id) : spec_(objective_spec(id)), variables_(spec_.variables()) {}

Evaluation TestFunction::evaluate(std::span<const double> x, const Progress&) const {
    return evaluate_objective(spec_.id, x);
}

}  // namespace caga

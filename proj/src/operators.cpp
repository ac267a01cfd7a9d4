#include "caga/operators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "caga/errors.hpp"

namespace caga {

const char* to_string(CrossoverKind kind) {
    switch (kind) {
        case CrossoverKind::one_point: return "one-point";
        case CrossoverKind::two_point: return "two-point";
        case CrossoverKind::variable_to_variable: return "var-to-var";
    }
    return "?";
}

const char* to_string(MutationVersion version) {
    return version == MutationVersion::ordinary ? "ordinary" : "gaussian";
}

namespace {

void require_same_layout(const Genome& a, const Genome& b) {
    if (!a.same_layout(b)) throw StructuralError("crossover parents have different layouts");
}

std::size_t uniform_index(std::size_t n, Rng& rng) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

}  // namespace

Genome one_point_crossover(const Genome& a, const Genome& b, std::size_t cut) {
    require_same_layout(a, b);
    if (cut > a.size()) throw StructuralError("crossover cut beyond genome length");
    std::vector<std::uint8_t> child(a.digits().begin(), a.digits().end());
    std::copy(b.digits().begin() + static_cast<std::ptrdiff_t>(cut), b.digits().end(),
              child.begin() + static_cast<std::ptrdiff_t>(cut));
    return Genome(a.layout_ptr(), std::move(child));
}

Genome two_point_crossover(const Genome& a, const Genome& b, std::size_t first, std::size_t second) {
    require_same_layout(a, b);
    if (first > second) std::swap(first, second);
    if (second > a.size()) throw StructuralError("crossover cut beyond genome length");
    std::vector<std::uint8_t> child(a.digits().begin(), a.digits().end());
    std::copy(b.digits().begin() + static_cast<std::ptrdiff_t>(first),
              b.digits().begin() + static_cast<std::ptrdiff_t>(second),
              child.begin() + static_cast<std::ptrdiff_t>(first));
    return Genome(a.layout_ptr(), std::move(child));
}

Genome crossover(const Genome& a, const Genome& b, CrossoverKind kind, Rng& rng) {
    require_same_layout(a, b);
    const std::size_t length = a.size();
    switch (kind) {
        case CrossoverKind::one_point: {
            if (length < 2) return a;
            const auto cut = std::uniform_int_distribution<std::size_t>(1, length - 1)(rng);
            return one_point_crossover(a, b, cut);
        }
        case CrossoverKind::two_point: {
            if (length < 3) return crossover(a, b, CrossoverKind::one_point, rng);
            std::uniform_int_distribution<std::size_t> pick(1, length - 1);
            const auto first = pick(rng);
            auto second = pick(rng);
            while (second == first) second = pick(rng);
            return two_point_crossover(a, b, first, second);
        }
        case CrossoverKind::variable_to_variable: {
            Genome child = a;
            std::bernoulli_distribution from_b(0.5);
            for (std::size_t var = 0; var < a.layout().variables(); ++var) {
                if (from_b(rng)) child.assign_substring(var, b.substring(var));
            }
            return child;
        }
    }
    throw ConfigError("unknown crossover kind");
}

void ordinary_digit_mutation(Genome& g, std::size_t pos, Rng& rng) {
    const int offset = std::uniform_int_distribution<int>(1, 9)(rng);
    g.set(pos, static_cast<std::uint8_t>((g[pos] + offset) % 10));
}

DigitShift draw_digit_shift(Rng& rng) {
    std::normal_distribution<double> normal(0.0, kGaussianDigitSigma);
    std::bernoulli_distribution negative(0.5);
    DigitShift shift;
    shift.magnitude = static_cast<int>(std::clamp(std::lround(std::fabs(normal(rng))), 0L, 9L));
    shift.sign = negative(rng) ? -1 : 1;
    return shift;
}

void apply_digit_shift(Genome& g, std::size_t pos, DigitShift shift) {
    const int moved = (static_cast<int>(g[pos]) + shift.sign * shift.magnitude) % 10;
    g.set(pos, static_cast<std::uint8_t>(moved < 0 ? moved + 10 : moved));
}

std::size_t gaussian_digit_perturb(Genome& g, std::size_t var, Rng& rng) {
    const std::size_t pos = g.layout().offset(var) + uniform_index(g.layout().length(var), rng);
    apply_digit_shift(g, pos, draw_digit_shift(rng));
    return pos;
}

void mutate_substring(Genome& g, std::size_t var, MutationVersion version, Rng& rng) {
    if (version == MutationVersion::gaussian) {
        gaussian_digit_perturb(g, var, rng);
        return;
    }
    const std::size_t pos = g.layout().offset(var) + uniform_index(g.layout().length(var), rng);
    ordinary_digit_mutation(g, pos, rng);
}

void regular_mutation(Lattice& lattice, int rounds, MutationVersion version, Rng& rng) {
    if (lattice.empty()) return;
    const std::size_t variables = lattice.front().genome.layout().variables();
    for (int round = 0; round < rounds; ++round) {
        for (std::size_t var = 0; var < variables; ++var) {
            Cell& cell = lattice[uniform_index(lattice.size(), rng)];
            mutate_substring(cell.genome, var, version, rng);
            cell.eval.reset();
        }
    }
}

void mutate_cell(Cell& cell, MutationVersion version, Rng& rng) {
    Genome& g = cell.genome;
    const std::size_t variables = g.layout().variables();
    if (version == MutationVersion::gaussian) {
        gaussian_digit_perturb(g, uniform_index(variables, rng), rng);
    } else {
        const std::size_t count =
            std::min(g.size(), std::uniform_int_distribution<std::size_t>(1, variables)(rng));
        std::vector<std::size_t> positions(g.size());
        std::iota(positions.begin(), positions.end(), std::size_t{0});
        // Partial Fisher-Yates: the first `count` entries are distinct uniform positions.
        for (std::size_t i = 0; i < count; ++i) {
            const auto j = std::uniform_int_distribution<std::size_t>(i, positions.size() - 1)(rng);
            std::swap(positions[i], positions[j]);
            ordinary_digit_mutation(g, positions[i], rng);
        }
    }
    cell.eval.reset();
}

std::size_t best_cell_index(const Lattice& lattice) {
    if (lattice.empty()) throw ConfigError("empty lattice");
    std::size_t best = 0;
    for (std::size_t i = 0; i < lattice.size(); ++i) {
        if (!lattice[i].evaluated()) throw EvaluationError("best cell requested on an unevaluated lattice");
        if (lattice[i].fitness() > lattice[best].fitness()) best = i;
    }
    return best;
}

void mutate_best(Lattice& lattice, MutationVersion version, Rng& rng) {
    mutate_cell(lattice[best_cell_index(lattice)], version, rng);
}

Archive::Archive(std::size_t capacity) : capacity_(capacity) {
    if (capacity_ == 0) throw ConfigError("archive capacity must be at least 1");
}

void Archive::push(const Genome& g) {
    if (entries_.size() == capacity_) entries_.pop_front();
    entries_.push_back(g);
}

std::optional<HyperMutationEvent> hyper_mutation(Lattice& lattice, const Archive& archive, Rng& rng) {
    if (archive.empty() || lattice.empty()) return std::nullopt;
    HyperMutationEvent event;
    event.cell = uniform_index(lattice.size(), rng);
    Cell& cell = lattice[event.cell];
    event.variable = uniform_index(cell.genome.layout().variables(), rng);
    event.entry = uniform_index(archive.size(), rng);
    const Genome& donor = archive[event.entry];
    if (!donor.same_layout(cell.genome)) throw StructuralError("archive entry layout differs from lattice");
    const auto source = donor.substring(event.variable);
    const auto target = cell.genome.substring(event.variable);
    if (!std::equal(source.begin(), source.end(), target.begin())) {
        cell.genome.assign_substring(event.variable, source);
        cell.eval.reset();
    }
    return event;
}

}  // namespace caga

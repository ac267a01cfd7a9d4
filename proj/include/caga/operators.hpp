#pragma once

#include <cstddef>
#include <deque>
#include <optional>
#include <utility>

#include "caga/genome.hpp"
#include "caga/lattice.hpp"

namespace caga {

enum class CrossoverKind { one_point, two_point, variable_to_variable };
enum class MutationVersion { ordinary, gaussian };

const char* to_string(CrossoverKind kind);
const char* to_string(MutationVersion version);

// Crossover. Parent layouts must match (StructuralError otherwise).

Genome crossover(const Genome& a, const Genome& b, CrossoverKind kind, Rng& rng);
/// child = a[0, cut) ++ b[cut, L)
Genome one_point_crossover(const Genome& a, const Genome& b, std::size_t cut);
/// Middle segment [first, second) from b, the rest from a.
Genome two_point_crossover(const Genome& a, const Genome& b, std::size_t first, std::size_t second);

// Digit-level mutation.

/// Replaces the digit at `pos` with a different, uniformly chosen digit.
void ordinary_digit_mutation(Genome& g, std::size_t pos, Rng& rng);

/// Signed digit shift drawn for Gaussian mutation: magnitude
/// clamp(round(|N(0, sigma)|), 0, 9) and a fair random sign.
struct DigitShift {
    int magnitude = 0;
    int sign = 1;
};

inline constexpr double kGaussianDigitSigma = 3.0;

DigitShift draw_digit_shift(Rng& rng);
/// new digit = (old + sign * magnitude) mod 10
void apply_digit_shift(Genome& g, std::size_t pos, DigitShift shift);
/// Picks a uniform digit inside the substring of `var` and shifts it.
/// Returns the touched position.
std::size_t gaussian_digit_perturb(Genome& g, std::size_t var, Rng& rng);

/// Mutates one digit of substring `var` with the given version.
void mutate_substring(Genome& g, std::size_t var, MutationVersion version, Rng& rng);

/// `rounds` passes; each pass visits every variable once and mutates that
/// substring in a uniformly chosen cell.
void regular_mutation(Lattice& lattice, int rounds, MutationVersion version, Rng& rng);

/// Ordinary: changes b distinct digits of the cell, b uniform in 1..V.
/// Gaussian: one gaussian_digit_perturb on a random variable.
void mutate_cell(Cell& cell, MutationVersion version, Rng& rng);

/// Index of the highest-fitness cell (first on ties). Every cell must be evaluated.
std::size_t best_cell_index(const Lattice& lattice);

/// mutate_cell on the highest-fitness cell of an evaluated lattice.
void mutate_best(Lattice& lattice, MutationVersion version, Rng& rng);

/// Bounded FIFO of past genomes feeding hyper-mutation.
class Archive {
public:
    explicit Archive(std::size_t capacity = 50);

    void push(const Genome& g);
    bool empty() const { return entries_.empty(); }
    std::size_t size() const { return entries_.size(); }
    std::size_t capacity() const { return capacity_; }
    const Genome& operator[](std::size_t i) const { return entries_[i]; }

private:
    std::size_t capacity_;
    std::deque<Genome> entries_;
};

struct HyperMutationEvent {
    std::size_t cell = 0;
    std::size_t variable = 0;
    std::size_t entry = 0;
};

/// Replaces one whole substring of one random cell with the matching
/// substring of a random archive entry. No-op (returns nullopt) when the
/// archive is empty.
std::optional<HyperMutationEvent> hyper_mutation(Lattice& lattice, const Archive& archive, Rng& rng);

}  // namespace caga

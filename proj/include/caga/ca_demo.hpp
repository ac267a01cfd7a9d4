#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "caga/genome.hpp"

namespace caga::demo {

using Row = std::vector<std::uint8_t>;

/// Elementary (radius-1, binary) rule: output per neighbourhood, indexed by
/// the pattern read as a 3-bit number (left is the high bit).
struct BinaryRule {
    std::array<std::uint8_t, 8> table{};

    std::uint8_t apply(std::uint8_t left, std::uint8_t center, std::uint8_t right) const {
        return table[static_cast<std::size_t>((left << 2) | (center << 1) | right)];
    }
    /// Wolfram code: bit k of the code is the output for pattern k.
    int wolfram_code() const;
    static BinaryRule from_wolfram(int code);
};

/// 111 110 100 101 011 010 001 000 -> 1 0 0 1 0 1 0 1 (Wolfram 165).
BinaryRule rule_165();

/// Rows over time. flips[t] lists the cells flipped at random after the
/// rule produced row t (empty for row 0).
struct TapeHistory {
    std::vector<Row> rows;
    std::vector<std::vector<std::size_t>> flips;

    std::size_t width() const { return rows.empty() ? 0 : rows.front().size(); }
};

/// One synchronous update with periodic boundaries.
Row next_row(const BinaryRule& rule, const Row& row);

/// Evolves `steps` rows beyond `initial`. After each rule application a
/// Poisson(perturb_rate) count of distinct, uniformly chosen cells is flipped.
TapeHistory evolve(const BinaryRule& rule, const Row& initial, int steps, double perturb_rate, Rng& rng);

Row random_row(std::size_t width, double density, Rng& rng);

/// Plain PBM ("P1"), one pixel per cell, 1 = black.
std::string to_pbm(const TapeHistory& history);
/// One line of 0/1 characters per row.
std::string to_text(const TapeHistory& history);

void write_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace caga::demo

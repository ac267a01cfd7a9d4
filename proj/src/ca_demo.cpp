#include "caga/ca_demo.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>

#include "caga/errors.hpp"

namespace caga::demo {

int BinaryRule::wolfram_code() const {
    int code = 0;
    for (int k = 7; k >= 0; --k) code = (code << 1) | (table[static_cast<std::size_t>(k)] & 1);
    return code;
}

BinaryRule BinaryRule::from_wolfram(int code) {
    if (code < 0 || code > 255) throw ConfigError("Wolfram code must be in 0..255");
    BinaryRule rule;
    for (std::size_t k = 0; k < 8; ++k) rule.table[k] = static_cast<std::uint8_t>((code >> k) & 1);
    return rule;
}

BinaryRule rule_165() {
    BinaryRule rule;
    rule.table[0b111] = 1;
    rule.table[0b110] = 0;
    rule.table[0b100] = 0;
    rule.table[0b101] = 1;
    rule.table[0b011] = 0;
    rule.table[0b010] = 1;
    rule.table[0b001] = 0;
    rule.table[0b000] = 1;
    return rule;
}

Row next_row(const BinaryRule& rule, const Row& row) {
    const std::size_t n = row.size();
    Row out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = rule.apply(row[(i + n - 1) % n], row[i], row[(i + 1) % n]);
    }
    return out;
}

TapeHistory evolve(const BinaryRule& rule, const Row& initial, int steps, double perturb_rate, Rng& rng) {
    if (initial.empty()) throw ConfigError("initial row must not be empty");
    if (steps < 0) throw ConfigError("step count must be non-negative");
    if (!(perturb_rate >= 0.0)) throw ConfigError("perturbation rate must be non-negative");
    for (auto c : initial) {
        if (c > 1) throw ConfigError("initial row must be binary");
    }

    TapeHistory history;
    history.rows.reserve(static_cast<std::size_t>(steps) + 1);
    history.rows.push_back(initial);
    history.flips.emplace_back();

    const std::size_t width = initial.size();
    std::vector<std::size_t> cells(width);
    for (int t = 0; t < steps; ++t) {
        Row row = next_row(rule, history.rows.back());
        std::vector<std::size_t> flipped;
        if (perturb_rate > 0.0) {
            const auto count = std::min<std::size_t>(
                width, static_cast<std::size_t>(std::poisson_distribution<long>(perturb_rate)(rng)));
            std::iota(cells.begin(), cells.end(), std::size_t{0});
            for (std::size_t i = 0; i < count; ++i) {
                const auto j = std::uniform_int_distribution<std::size_t>(i, width - 1)(rng);
                std::swap(cells[i], cells[j]);
                row[cells[i]] ^= 1;
                flipped.push_back(cells[i]);
            }
        }
        history.rows.push_back(std::move(row));
        history.flips.push_back(std::move(flipped));
    }
    return history;
}

Row random_row(std::size_t width, double density, Rng& rng) {
    std::bernoulli_distribution on(density);
    Row row(width);
    for (auto& c : row) c = on(rng) ? 1 : 0;
    return row;
}

std::string to_pbm(const TapeHistory& history) {
    std::string out = "P1\n" + std::to_string(history.width()) + " " + std::to_string(history.rows.size()) + "\n";
    for (const Row& row : history.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out.push_back(' ');
            out.push_back(row[i] ? '1' : '0');
        }
        out.push_back('\n');
    }
    return out;
}

std::string to_text(const TapeHistory& history) {
    std::string out;
    for (const Row& row : history.rows) {
        for (auto c : row) out.push_back(c ? '1' : '0');
        out.push_back('\n');
    }
    return out;
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out << contents;
    if (!out) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace caga::demo

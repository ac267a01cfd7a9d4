#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace caga {

using Rng = std::mt19937_64;
using DesignVector = std::vector<double>;

/// Bounds and resolution of one design variable. Values live on the grid
/// lower + k * step, k = 0..grid_size().
struct VariableSpec {
    double lower = 0.0;
    double upper = 1.0;
    double step = 1.0;

    std::int64_t grid_size() const;
    /// Decimal digits needed to write grid_size().
    int digits() const;
    /// Throws ConfigError unless upper > lower, step > 0 and grid_size() >= 1.
    void validate() const;
};

/// Per-variable substring lengths and offsets within a genome.
class Layout {
public:
    explicit Layout(std::vector<int> lengths);

    std::size_t variables() const { return lengths_.size(); }
    std::size_t total_digits() const { return total_; }
    std::size_t offset(std::size_t var) const { return offsets_.at(var); }
    std::size_t length(std::size_t var) const { return lengths_.at(var); }
    const std::vector<int>& lengths() const { return lengths_; }
    /// Variable index that owns digit position `pos`.
    std::size_t variable_of(std::size_t pos) const;

    friend bool operator==(const Layout&, const Layout&) = default;

private:
    std::vector<int> lengths_;
    std::vector<std::size_t> offsets_;
    std::size_t total_ = 0;
};

using LayoutPtr = std::shared_ptr<const Layout>;

LayoutPtr make_layout(std::span<const VariableSpec> specs);

/// Fixed-length string of decimal digits, partitioned into one substring per
/// design variable. Each substring holds a zero-padded grid index.
class Genome {
public:
    Genome() = default;
    Genome(LayoutPtr layout, std::vector<std::uint8_t> digits);

    const Layout& layout() const { return *layout_; }
    const LayoutPtr& layout_ptr() const { return layout_; }

    std::size_t size() const { return digits_.size(); }
    std::uint8_t operator[](std::size_t pos) const { return digits_[pos]; }
    /// Throws BoundsError if `value` is not a decimal digit.
    void set(std::size_t pos, std::uint8_t value);

    std::span<const std::uint8_t> digits() const { return digits_; }
    std::span<const std::uint8_t> substring(std::size_t var) const;
    void assign_substring(std::size_t var, std::span<const std::uint8_t> source);

    /// Integer read from the substring of `var` (no saturation).
    std::int64_t index(std::size_t var) const;

    bool same_layout(const Genome& other) const;
    std::string str() const;

    friend bool operator==(const Genome& a, const Genome& b) {
        return a.digits_ == b.digits_ && a.same_layout(b);
    }

private:
    LayoutPtr layout_;
    std::vector<std::uint8_t> digits_;
};

/// Parses a digit string against an existing layout.
Genome genome_from_string(std::string_view digits, LayoutPtr layout);

Genome encode(std::span<const double> values, std::span<const VariableSpec> specs);
DesignVector decode(const Genome& genome, std::span<const VariableSpec> specs);
Genome random_genome(std::span<const VariableSpec> specs, Rng& rng);
Genome random_genome(const LayoutPtr& layout, Rng& rng);

}  // namespace caga

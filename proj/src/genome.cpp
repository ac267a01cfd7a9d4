#include "caga/genome.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "caga/errors.hpp"

namespace caga {

std::int64_t VariableSpec::grid_size() const {
    return std::llround((upper - lower) / step);
}

int VariableSpec::digits() const {
    int count = 1;
    for (std::int64_t n = grid_size(); n >= 10; n /= 10) ++count;
    return count;
}

void VariableSpec::validate() const {
    if (!std::isfinite(lower) || !std::isfinite(upper) || !(upper > lower)) {
        std::ostringstream msg;
        msg << "variable bounds must satisfy lower < upper (got " << lower << ", " << upper << ")";
        throw ConfigError(msg.str());
    }
    if (!(step > 0.0)) throw ConfigError("variable step must be positive");
    if (grid_size() < 1) throw ConfigError("variable step is larger than its range");
}

Layout::Layout(std::vector<int> lengths) : lengths_(std::move(lengths)) {
    offsets_.reserve(lengths_.size());
    for (int len : lengths_) {
        if (len < 1) throw ConfigError("substring length must be at least one digit");
        offsets_.push_back(total_);
        total_ += static_cast<std::size_t>(len);
    }
}

std::size_t Layout::variable_of(std::size_t pos) const {
    if (pos >= total_) throw StructuralError("digit position outside genome");
    auto it = std::upper_bound(offsets_.begin(), offsets_.end(), pos);
    return static_cast<std::size_t>(std::distance(offsets_.begin(), it)) - 1;
}

LayoutPtr make_layout(std::span<const VariableSpec> specs) {
    std::vector<int> lengths;
    lengths.reserve(specs.size());
    for (const auto& spec : specs) {
        spec.validate();
        lengths.push_back(spec.digits());
    }
    return std::make_shared<const Layout>(std::move(lengths));
}

Genome::Genome(LayoutPtr layout, std::vector<std::uint8_t> digits)
    : layout_(std::move(layout)), digits_(std::move(digits)) {
    if (!layout_) throw StructuralError("genome requires a layout");
    if (digits_.size() != layout_->total_digits()) {
        throw StructuralError("digit count does not match layout");
    }
    for (auto d : digits_) {
        if (d > 9) throw BoundsError("genome digit outside 0..9");
    }
}

void Genome::set(std::size_t pos, std::uint8_t value) {
    if (value > 9) throw BoundsError("genome digit outside 0..9");
    digits_.at(pos) = value;
}

std::span<const std::uint8_t> Genome::substring(std::size_t var) const {
    return std::span<const std::uint8_t>(digits_).subspan(layout_->offset(var), layout_->length(var));
}

void Genome::assign_substring(std::size_t var, std::span<const std::uint8_t> source) {
    if (source.size() != layout_->length(var)) throw StructuralError("substring length mismatch");
    std::copy(source.begin(), source.end(), digits_.begin() + static_cast<std::ptrdiff_t>(layout_->offset(var)));
}

std::int64_t Genome::index(std::size_t var) const {
    std::int64_t k = 0;
    for (auto d : substring(var)) k = k * 10 + d;
    return k;
}

bool Genome::same_layout(const Genome& other) const {
    if (layout_ == other.layout_) return true;
    if (!layout_ || !other.layout_) return false;
    return *layout_ == *other.layout_;
}

std::string Genome::str() const {
    std::string s;
    s.reserve(digits_.size());
    for (auto d : digits_) s.push_back(static_cast<char>('0' + d));
    return s;
}

Genome genome_from_string(std::string_view digits, LayoutPtr layout) {
    std::vector<std::uint8_t> out;
    out.reserve(digits.size());
    for (char c : digits) {
        if (c < '0' || c > '9') throw StructuralError("genome string must contain only decimal digits");
        out.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    return Genome(std::move(layout), std::move(out));
}

Genome encode(std::span<const double> values, std::span<const VariableSpec> specs) {
    if (values.size() != specs.size()) throw StructuralError("value count does not match variable specs");
    auto layout = make_layout(specs);
    std::vector<std::uint8_t> digits(layout->total_digits(), 0);
    for (std::size_t i = 0; i < specs.size(); ++i) {
        const auto& spec = specs[i];
        const double v = values[i];
        const double slack = 1e-9 * spec.step;
        if (!(v >= spec.lower - slack && v <= spec.upper + slack)) {
            std::ostringstream msg;
            msg << "value " << v << " of variable " << i << " outside [" << spec.lower << ", " << spec.upper << "]";
            throw BoundsError(msg.str());
        }
        std::int64_t k = std::llround((v - spec.lower) / spec.step);
        k = std::clamp<std::int64_t>(k, 0, spec.grid_size());
        const std::size_t begin = layout->offset(i);
        for (std::size_t pos = begin + layout->length(i); pos-- > begin;) {
            digits[pos] = static_cast<std::uint8_t>(k % 10);
            k /= 10;
        }
    }
    return Genome(std::move(layout), std::move(digits));
}

DesignVector decode(const Genome& genome, std::span<const VariableSpec> specs) {
    const Layout& layout = genome.layout();
    if (layout.variables() != specs.size()) throw StructuralError("genome layout does not match variable specs");
    DesignVector values(specs.size());
    for (std::size_t i = 0; i < specs.size(); ++i) {
        const auto& spec = specs[i];
        if (static_cast<int>(layout.length(i)) != spec.digits()) {
            throw StructuralError("substring length does not match variable resolution");
        }
        const std::int64_t k = std::min(genome.index(i), spec.grid_size());
        // The last grid point can overshoot `upper` when the range is not an
        // exact multiple of the step.
        values[i] = std::min(spec.lower + static_cast<double>(k) * spec.step, spec.upper);
    }
    return values;
}

Genome random_genome(const LayoutPtr& layout, Rng& rng) {
    std::uniform_int_distribution<int> digit(0, 9);
    std::vector<std::uint8_t> digits(layout->total_digits());
    for (auto& d : digits) d = static_cast<std::uint8_t>(digit(rng));
    return Genome(layout, std::move(digits));
}

Genome random_genome(std::span<const VariableSpec> specs, Rng& rng) {
    return random_genome(make_layout(specs), rng);
}

}  // namespace caga

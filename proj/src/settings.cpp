#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "caga/bench.hpp"
#include "caga/errors.hpp"
#include "caga/objectives.hpp"

namespace caga {

namespace {

std::string trim(std::string_view s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string_view::npos) return {};
    const auto end = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(begin, end - begin + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        parts.push_back(trim(s.substr(start, pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, std::string_view expected) {
    throw ConfigError("setting '" + std::string(key) + "': cannot use '" + std::string(value) + "' (expected " +
                      std::string(expected) + ")");
}

template <class T>
T parse_number(std::string_view key, std::string_view text) {
    const std::string s = trim(text);
    T v{};
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
        bad_value(key, text, std::is_integral_v<T> ? "an integer" : "a number");
    }
    return v;
}

bool is_off(std::string_view v) {
    const std::string s = trim(v);
    return s == "off" || s == "none" || s == "0";
}

CrossoverKind parse_crossover(std::string_view key, std::string_view v) {
    const std::string s = trim(v);
    if (s == "one-point") return CrossoverKind::one_point;
    if (s == "two-point") return CrossoverKind::two_point;
    if (s == "var-to-var" || s == "variable-to-variable") return CrossoverKind::variable_to_variable;
    bad_value(key, v, "one-point, two-point or var-to-var");
}

MutationVersion parse_version(std::string_view key, std::string_view v) {
    const std::string s = trim(v);
    if (s == "ordinary") return MutationVersion::ordinary;
    if (s == "gaussian") return MutationVersion::gaussian;
    bad_value(key, v, "ordinary or gaussian");
}

template <class T, class Parse>
void set_late(Staged<T>& staged, std::string_view key, std::string_view v, Parse parse) {
    if (trim(v) == "none") {
        staged.late.reset();
    } else {
        staged.late = parse(key, v);
    }
}

truss::PenaltyParameters parse_penalty(std::string_view key, std::string_view v) {
    const auto parts = split(v, ',');
    if (parts.size() != 5) bad_value(key, v, "v1,v2,P1,P2,P3");
    truss::PenaltyParameters p{parse_number<double>(key, parts[0]), parse_number<double>(key, parts[1]),
                               parse_number<double>(key, parts[2]), parse_number<double>(key, parts[3]),
                               parse_number<double>(key, parts[4])};
    p.validate();
    return p;
}

truss::ToleranceSchedule parse_tolerance(std::string_view key, std::string_view v) {
    truss::ToleranceSchedule schedule;
    schedule.steps.clear();
    for (const std::string& item : split(v, ',')) {
        const auto parts = split(item, ':');
        if (parts.size() != 2) bad_value(key, v, "start:multiplier,...");
        schedule.steps.push_back({parse_number<double>(key, parts[0]), parse_number<double>(key, parts[1])});
    }
    schedule.validate();
    return schedule;
}

}  // namespace

const std::vector<std::string>& setting_keys() {
    static const std::vector<std::string> keys{
        "fn", "model", "seed", "pop", "evals", "generations",
        "crossover", "crossover-late", "crossover-switch",
        "regular-period", "regular-count", "regular-count-max", "regular-version", "regular-version-late",
        "regular-switch",
        "best-period", "best-version", "best-version-late", "best-switch",
        "hyper-period", "archive-capacity",
        "reinit-period", "reinit-start",
        "disable",
        "penalty-d-early", "penalty-d-late", "penalty-s-early", "penalty-s-late", "penalty-switch",
        "tolerance", "feasibility-tol"};
    return keys;
}

void apply_setting(RunConfig& config, std::string_view key_in, std::string_view value) {
    const std::string key = trim(key_in);
    GaConfig& ga = config.ga;
    auto regular = [&]() -> RegularMutationPlan& {
        if (!ga.regular) ga.regular = RegularMutationPlan{};
        return *ga.regular;
    };
    auto best = [&]() -> BestMutationPlan& {
        if (!ga.best) ga.best = BestMutationPlan{};
        return *ga.best;
    };

    if (key == "fn") {
        config.problem = "f" + std::to_string(parse_objective_id(trim(value)));
    } else if (key == "model") {
        config.problem = trim(value);
    } else if (key == "seed") {
        config.seed = parse_number<std::uint64_t>(key, value);
    } else if (key == "pop") {
        ga.population = parse_number<int>(key, value);
    } else if (key == "evals") {
        ga.evaluation_budget = parse_number<long>(key, value);
    } else if (key == "generations") {
        ga.evaluation_budget = parse_number<long>(key, value) * ga.population;
    } else if (key == "crossover") {
        ga.crossover.early = parse_crossover(key, value);
    } else if (key == "crossover-late") {
        set_late(ga.crossover, key, value, parse_crossover);
    } else if (key == "crossover-switch") {
        ga.crossover.switch_fraction = parse_number<double>(key, value);
    } else if (key == "regular-period") {
        if (is_off(value)) {
            ga.regular.reset();
        } else {
            regular().period = parse_number<int>(key, value);
        }
    } else if (key == "regular-count") {
        regular().count = parse_number<int>(key, value);
    } else if (key == "regular-count-max") {
        regular().count_max = parse_number<int>(key, value);
    } else if (key == "regular-version") {
        regular().version.early = parse_version(key, value);
    } else if (key == "regular-version-late") {
        set_late(regular().version, key, value, parse_version);
    } else if (key == "regular-switch") {
        regular().version.switch_fraction = parse_number<double>(key, value);
    } else if (key == "best-period") {
        if (is_off(value)) {
            ga.best.reset();
        } else {
            best().period = parse_number<int>(key, value);
        }
    } else if (key == "best-version") {
        best().version.early = parse_version(key, value);
    } else if (key == "best-version-late") {
        set_late(best().version, key, value, parse_version);
    } else if (key == "best-switch") {
        best().version.switch_fraction = parse_number<double>(key, value);
    } else if (key == "hyper-period") {
        if (is_off(value)) {
            ga.hyper.reset();
        } else {
            if (!ga.hyper) ga.hyper = HyperMutationPlan{};
            ga.hyper->period = parse_number<int>(key, value);
        }
    } else if (key == "archive-capacity") {
        if (!ga.hyper) ga.hyper = HyperMutationPlan{};
        ga.hyper->archive_capacity = parse_number<std::size_t>(key, value);
    } else if (key == "reinit-period") {
        if (is_off(value)) {
            ga.reinit.reset();
        } else {
            if (!ga.reinit) ga.reinit = ReinitPlan{};
            ga.reinit->period = parse_number<int>(key, value);
        }
    } else if (key == "reinit-start") {
        if (!ga.reinit) ga.reinit = ReinitPlan{};
        ga.reinit->start_fraction = parse_number<double>(key, value);
    } else if (key == "disable") {
        for (const std::string& what : split(value, ',')) {
            if (what == "regular") {
                ga.regular.reset();
            } else if (what == "best") {
                ga.best.reset();
            } else if (what == "hyper") {
                ga.hyper.reset();
            } else if (what == "reinit") {
                ga.reinit.reset();
            } else if (what == "mutation") {
                ga.regular.reset();
                ga.best.reset();
                ga.hyper.reset();
            } else if (what != "none") {
                bad_value(key, what, "regular, best, hyper, reinit, mutation or none");
            }
        }
    } else if (key == "penalty-d-early") {
        config.constraints.displacement.early = parse_penalty(key, value);
    } else if (key == "penalty-d-late") {
        config.constraints.displacement.late = parse_penalty(key, value);
    } else if (key == "penalty-s-early") {
        config.constraints.stress.early = parse_penalty(key, value);
    } else if (key == "penalty-s-late") {
        config.constraints.stress.late = parse_penalty(key, value);
    } else if (key == "penalty-switch") {
        const double f = parse_number<double>(key, value);
        config.constraints.displacement.switch_fraction = f;
        config.constraints.stress.switch_fraction = f;
    } else if (key == "tolerance") {
        config.constraints.tolerance = parse_tolerance(key, value);
    } else if (key == "feasibility-tol") {
        config.constraints.feasibility_tolerance = parse_number<double>(key, value);
    } else {
        throw ConfigError("unknown setting '" + key + "'");
    }
}

std::vector<std::pair<std::string, std::string>> parse_settings(std::string_view text) {
    std::vector<std::pair<std::string, std::string>> out;
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        if (trim(line).empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
        }
        out.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return out;
}

std::vector<std::pair<std::string, std::string>> load_settings(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file '" + path.string() + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_settings(text.str());
}

std::vector<std::string> expand_values(std::string_view spec_in) {
    const std::string spec = trim(spec_in);
    std::vector<std::string> values;
    const auto dots = spec.find("..");
    if (dots == std::string::npos) {
        for (const std::string& v : split(spec, ',')) {
            if (v.empty()) throw ConfigError("empty value in list '" + spec + "'");
            values.push_back(v);
        }
        return values;
    }
    const std::string lo_text = spec.substr(0, dots);
    std::string hi_text = spec.substr(dots + 2);
    std::string step_text;
    if (auto colon = hi_text.find(':'); colon != std::string::npos) {
        step_text = hi_text.substr(colon + 1);
        hi_text = hi_text.substr(0, colon);
    }
    if (step_text.empty()) {
        const long lo = parse_number<long>("range", lo_text);
        const long hi = parse_number<long>("range", hi_text);
        if (hi < lo) throw ConfigError("empty range '" + spec + "'");
        for (long v = lo; v <= hi; ++v) values.push_back(std::to_string(v));
        return values;
    }
    const double lo = parse_number<double>("range", lo_text);
    const double hi = parse_number<double>("range", hi_text);
    const double step = parse_number<double>("range", step_text);
    if (!(step > 0.0) || hi < lo) throw ConfigError("empty range '" + spec + "'");
    const long count = std::lround(std::floor((hi - lo) / step + 1e-9));
    for (long i = 0; i <= count; ++i) values.push_back(format_number(lo + static_cast<double>(i) * step));
    return values;
}

}  // namespace caga

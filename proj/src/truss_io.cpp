#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "benchmark_models.hpp"
#include "caga/errors.hpp"
#include "caga/truss.hpp"

namespace caga::truss {

namespace {

struct Defaults {
    std::optional<double> youngs_modulus, density, stress_limit, displacement_limit;
    std::optional<VariableSpec> area;
};

struct PendingMember {
    std::size_t first, second;
    std::map<std::string, std::string> overrides;
    int line;
};

class LineError {
public:
    explicit LineError(int line) : line_(line) {}
    [[noreturn]] void operator()(const std::string& what) const {
        throw ConfigError("truss model line " + std::to_string(line_) + ": " + what);
    }

private:
    int line_;
};

double to_number(const std::string& token, const LineError& fail) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc() || ptr != token.data() + token.size()) fail("expected a number, got '" + token + "'");
    return v;
}

std::size_t to_index(const std::string& token, std::size_t count, const char* what, const LineError& fail) {
    std::size_t id = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), id);
    if (ec != std::errc() || ptr != token.data() + token.size() || id < 1 || id > count) {
        fail(std::string("unknown ") + what + " '" + token + "'");
    }
    return id - 1;
}

VariableSpec parse_area(const std::vector<std::string>& parts, const LineError& fail) {
    if (parts.size() != 3) fail("area needs <min> <max> <step>");
    return VariableSpec{to_number(parts[0], fail), to_number(parts[1], fail), to_number(parts[2], fail)};
}

}  // namespace

TrussModel parse_truss(std::string_view text) {
    TrussModel model;
    Defaults defaults;
    std::vector<PendingMember> pending;
    std::vector<std::pair<std::vector<std::string>, int>> deferred;  // support/load lines

    std::istringstream in{std::string(text)};
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const LineError fail(line_no);
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        std::istringstream tokens(raw);
        std::vector<std::string> words;
        for (std::string w; tokens >> w;) words.push_back(w);
        if (words.empty()) continue;
        const std::string key = words.front();
        const std::vector<std::string> args(words.begin() + 1, words.end());

        auto single = [&]() -> double {
            if (args.size() != 1) fail(key + " takes one value");
            return to_number(args[0], fail);
        };
        if (key == "name") {
            if (args.size() != 1) fail("name takes one word");
            model.name = args[0];
        } else if (key == "youngs_modulus") {
            defaults.youngs_modulus = single();
        } else if (key == "density") {
            defaults.density = single();
        } else if (key == "stress_limit") {
            defaults.stress_limit = single();
        } else if (key == "displacement_limit") {
            defaults.displacement_limit = single();
        } else if (key == "area") {
            defaults.area = parse_area(args, fail);
        } else if (key == "node") {
            if (args.size() != 3) fail("node needs <id> <x> <y>");
            if (to_number(args[0], fail) != static_cast<double>(model.nodes.size() + 1)) {
                fail("node ids must be consecutive from 1");
            }
            model.nodes.push_back(Node{to_number(args[1], fail), to_number(args[2], fail)});
        } else if (key == "member") {
            if (args.size() < 3) fail("member needs <id> <node> <node> [key=value ...]");
            if (to_number(args[0], fail) != static_cast<double>(pending.size() + 1)) {
                fail("member ids must be consecutive from 1");
            }
            PendingMember m{to_index(args[1], model.nodes.size(), "node", fail),
                            to_index(args[2], model.nodes.size(), "node", fail), {}, line_no};
            for (std::size_t i = 3; i < args.size(); ++i) {
                const auto eq = args[i].find('=');
                if (eq == std::string::npos) fail("member options are key=value, got '" + args[i] + "'");
                m.overrides[args[i].substr(0, eq)] = args[i].substr(eq + 1);
            }
            pending.push_back(std::move(m));
        } else if (key == "support" || key == "load") {
            deferred.emplace_back(words, line_no);
        } else {
            fail("unknown keyword '" + key + "'");
        }
    }

    model.fixed.assign(model.nodes.size(), {false, false});
    model.loads.assign(model.dof_count(), 0.0);
    for (const auto& [words, line] : deferred) {
        const LineError fail(line);
        if (words[0] == "support") {
            if (words.size() != 3) fail("support needs <node> x|y|xy");
            const std::size_t n = to_index(words[1], model.nodes.size(), "node", fail);
            const std::string& axes = words[2];
            if (axes != "x" && axes != "y" && axes != "xy") fail("support axes must be x, y or xy");
            if (axes.find('x') != std::string::npos) model.fixed[n][0] = true;
            if (axes.find('y') != std::string::npos) model.fixed[n][1] = true;
        } else {
            if (words.size() != 4) fail("load needs <node> <fx> <fy>");
            const std::size_t n = to_index(words[1], model.nodes.size(), "node", fail);
            model.loads[2 * n] += to_number(words[2], fail);
            model.loads[2 * n + 1] += to_number(words[3], fail);
        }
    }

    if (!defaults.displacement_limit) throw ConfigError("truss model: displacement_limit missing");
    model.displacement_limits.assign(model.dof_count(), *defaults.displacement_limit);

    for (const PendingMember& p : pending) {
        const LineError fail(p.line);
        auto pick = [&](const char* key, const std::optional<double>& fallback) {
            if (auto it = p.overrides.find(key); it != p.overrides.end()) return to_number(it->second, fail);
            if (!fallback) fail(std::string("no ") + key + " given for member or model");
            return *fallback;
        };
        Member m;
        m.first = p.first;
        m.second = p.second;
        m.youngs_modulus = pick("youngs_modulus", defaults.youngs_modulus);
        m.density = pick("density", defaults.density);
        m.stress_limit = pick("stress_limit", defaults.stress_limit);
        if (auto it = p.overrides.find("area"); it != p.overrides.end()) {
            std::vector<std::string> parts;
            std::istringstream s(it->second);
            for (std::string part; std::getline(s, part, ':');) parts.push_back(part);
            m.area = parse_area(parts, fail);
        } else {
            if (!defaults.area) fail("no area bounds given for member or model");
            m.area = *defaults.area;
        }
        for (const auto& [k, v] : p.overrides) {
            if (k != "youngs_modulus" && k != "density" && k != "stress_limit" && k != "area") {
                fail("unknown member option '" + k + "'");
            }
        }
        model.members.push_back(m);
    }
    if (model.name.empty()) model.name = "truss";
    model.validate();
    return model;
}

TrussModel load_truss(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open truss model '" + path.string() + "'");
    std::ostringstream text;
    text << in.rdbuf();
    try {
        return parse_truss(text.str());
    } catch (const ConfigError& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

std::vector<std::string> benchmark_names() { return {"ten_bar", "seventeen_bar"}; }

TrussModel benchmark_model(std::string_view name) {
    if (name == "ten_bar") return parse_truss(detail::kTenBarTruss);
    if (name == "seventeen_bar") return parse_truss(detail::kSeventeenBarTruss);
    throw ConfigError("unknown benchmark truss '" + std::string(name) + "' (expected ten_bar or seventeen_bar)");
}

TrussModel resolve_model(std::string_view name_or_path) {
    for (const auto& n : benchmark_names()) {
        if (name_or_path == n) return benchmark_model(name_or_path);
    }
    return load_truss(std::filesystem::path(name_or_path));
}

}  // namespace caga::truss

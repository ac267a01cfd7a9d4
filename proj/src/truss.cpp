#include "caga/truss.hpp"

#include <cmath>
#include <sstream>

#include "caga/errors.hpp"

namespace caga::truss {

std::vector<std::size_t> TrussModel::free_dofs() const {
    std::vector<std::size_t> dofs;
    for (std::size_t n = 0; n < nodes.size(); ++n) {
        for (std::size_t axis = 0; axis < 2; ++axis) {
            if (!fixed[n][axis]) dofs.push_back(2 * n + axis);
        }
    }
    return dofs;
}

double TrussModel::length(std::size_t member) const {
    const Member& m = members.at(member);
    return std::hypot(nodes[m.second].x - nodes[m.first].x, nodes[m.second].y - nodes[m.first].y);
}

std::vector<VariableSpec> TrussModel::area_specs() const {
    std::vector<VariableSpec> specs;
    specs.reserve(members.size());
    for (const Member& m : members) specs.push_back(m.area);
    return specs;
}

void TrussModel::validate() const {
    auto fail = [this](const std::string& what) { throw ConfigError("truss '" + name + "': " + what); };
    if (nodes.empty()) fail("no nodes");
    if (members.empty()) fail("no members");
    if (fixed.size() != nodes.size()) fail("support table size differs from node count");
    if (loads.size() != dof_count()) fail("load vector size differs from dof count");
    if (displacement_limits.size() != dof_count()) fail("displacement limit vector size differs from dof count");
    for (std::size_t i = 0; i < members.size(); ++i) {
        const Member& m = members[i];
        const std::string id = "member " + std::to_string(i + 1);
        if (m.first >= nodes.size() || m.second >= nodes.size()) fail(id + " references an unknown node");
        if (m.first == m.second || !(length(i) > 0.0)) fail(id + " has zero length");
        if (!(m.youngs_modulus > 0.0)) fail(id + " needs a positive Young's modulus");
        if (!(m.density >= 0.0)) fail(id + " needs a non-negative density");
        if (!(m.stress_limit > 0.0)) fail(id + " needs a positive stress limit");
        if (!(m.area.lower > 0.0)) fail(id + " needs a positive minimum area");
        m.area.validate();
    }
    for (std::size_t dof : free_dofs()) {
        if (!(displacement_limits[dof] > 0.0)) fail("displacement limits must be positive");
    }
    if (free_dofs().empty()) fail("every degree of freedom is restrained");
}

namespace {

struct Direction {
    double c;
    double s;
    double length;
};

Direction direction(const TrussModel& model, std::size_t member) {
    const Member& m = model.members[member];
    const double dx = model.nodes[m.second].x - model.nodes[m.first].x;
    const double dy = model.nodes[m.second].y - model.nodes[m.first].y;
    const double length = std::hypot(dx, dy);
    return {dx / length, dy / length, length};
}

void check_areas(const TrussModel& model, std::span<const double> areas) {
    if (areas.size() != model.members.size()) {
        throw StructuralError("expected " + std::to_string(model.members.size()) + " member areas, got " +
                              std::to_string(areas.size()));
    }
    for (std::size_t i = 0; i < areas.size(); ++i) {
        const VariableSpec& b = model.members[i].area;
        const double slack = 1e-9 * (b.upper - b.lower);
        if (!(areas[i] >= b.lower - slack && areas[i] <= b.upper + slack)) {
            std::ostringstream msg;
            msg << "area " << areas[i] << " of member " << i + 1 << " outside [" << b.lower << ", " << b.upper << "]";
            throw BoundsError(msg.str());
        }
    }
}

}  // namespace

Eigen::MatrixXd assemble_stiffness(const TrussModel& model, std::span<const double> areas) {
    if (areas.size() != model.members.size()) throw StructuralError("member area count mismatch");
    const auto n = static_cast<Eigen::Index>(model.dof_count());
    Eigen::MatrixXd k = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t i = 0; i < model.members.size(); ++i) {
        const Member& m = model.members[i];
        const auto [c, s, length] = direction(model, i);
        const double ea_l = m.youngs_modulus * areas[i] / length;
        const Eigen::Vector4d t(-c, -s, c, s);
        const Eigen::Matrix4d ke = ea_l * t * t.transpose();
        const std::array<Eigen::Index, 4> dofs{
            static_cast<Eigen::Index>(2 * m.first), static_cast<Eigen::Index>(2 * m.first + 1),
            static_cast<Eigen::Index>(2 * m.second), static_cast<Eigen::Index>(2 * m.second + 1)};
        for (int r = 0; r < 4; ++r) {
            for (int col = 0; col < 4; ++col) k(dofs[r], dofs[col]) += ke(r, col);
        }
    }
    return k;
}

AnalysisResult analyze(const TrussModel& model, std::span<const double> areas) {
    check_areas(model, areas);
    const Eigen::MatrixXd k = assemble_stiffness(model, areas);
    const std::vector<std::size_t> free = model.free_dofs();
    const auto nf = static_cast<Eigen::Index>(free.size());

    Eigen::MatrixXd kff(nf, nf);
    Eigen::VectorXd f(nf);
    for (Eigen::Index r = 0; r < nf; ++r) {
        f(r) = model.loads[free[static_cast<std::size_t>(r)]];
        for (Eigen::Index c = 0; c < nf; ++c) {
            kff(r, c) = k(static_cast<Eigen::Index>(free[static_cast<std::size_t>(r)]),
                          static_cast<Eigen::Index>(free[static_cast<std::size_t>(c)]));
        }
    }
    const Eigen::LLT<Eigen::MatrixXd> llt(kff);
    if (llt.info() != Eigen::Success) {
        throw InstabilityError("truss '" + model.name + "' is unstable: restrained stiffness is not positive definite");
    }
    const Eigen::VectorXd d = llt.solve(f);

    AnalysisResult result;
    result.displacements.assign(model.dof_count(), 0.0);
    for (Eigen::Index r = 0; r < nf; ++r) result.displacements[free[static_cast<std::size_t>(r)]] = d(r);

    result.axial_forces.resize(model.members.size());
    result.stresses.resize(model.members.size());
    for (std::size_t i = 0; i < model.members.size(); ++i) {
        const Member& m = model.members[i];
        const auto [c, s, length] = direction(model, i);
        const auto& u = result.displacements;
        const double elongation =
            c * (u[2 * m.second] - u[2 * m.first]) + s * (u[2 * m.second + 1] - u[2 * m.first + 1]);
        result.stresses[i] = m.youngs_modulus * elongation / length;
        result.axial_forces[i] = result.stresses[i] * areas[i];
        result.weight += m.density * areas[i] * length;
    }
    return result;
}

double violation_factor(std::span<const double> values, std::span<const double> allowables) {
    if (values.size() != allowables.size()) throw StructuralError("constraint value/allowable count mismatch");
    double sum = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!(allowables[i] > 0.0)) throw ConfigError("constraint allowables must be positive");
        sum += std::max(std::fabs(values[i]) / allowables[i] - 1.0, 0.0);
    }
    return sum;
}

void PenaltyParameters::validate() const {
    if (!(v1 > 0.0 && v1 < v2)) throw ConfigError("penalty thresholds must satisfy 0 < v1 < v2");
    if (!(p1 < p2 && p2 < p3)) throw ConfigError("penalty parameters must satisfy P1 < P2 < P3");
    if (!(p1 >= 0.0)) throw ConfigError("penalty parameters must be non-negative");
}

double penalty(double violation, const PenaltyConfig& config, const Progress& progress) {
    if (!(violation > 0.0)) return 0.0;
    const PenaltyParameters& p = config.at(progress);
    const double factor = violation < p.v1 ? p.p1 : (violation < p.v2 ? p.p2 : p.p3);
    return factor * violation * violation;
}

double ToleranceSchedule::multiplier(const Progress& p) const {
    double m = 1.0;
    const double at = p.fraction();
    for (const ToleranceStep& step : steps) {
        if (at >= step.start_fraction) m = step.multiplier;
    }
    return m;
}

void ToleranceSchedule::validate() const {
    double previous_start = -1.0;
    double previous_multiplier = INFINITY;
    for (const ToleranceStep& step : steps) {
        if (!(step.start_fraction > previous_start)) throw ConfigError("tolerance steps must have increasing start");
        if (!(step.multiplier >= 1.0)) throw ConfigError("tolerance multipliers must be >= 1");
        if (step.multiplier > previous_multiplier) throw ConfigError("tolerance multipliers must not increase");
        previous_start = step.start_fraction;
        previous_multiplier = step.multiplier;
    }
}

void ConstraintHandling::validate() const {
    for (const PenaltyConfig* c : {&displacement, &stress}) {
        c->early.validate();
        c->late.validate();
    }
    tolerance.validate();
}

namespace {

struct ChannelValues {
    std::vector<double> displacements, displacement_limits;
    std::vector<double> stresses, stress_limits;
};

ChannelValues channel_values(const TrussModel& model, const AnalysisResult& analysis, double relax) {
    ChannelValues out;
    for (std::size_t dof : model.free_dofs()) {
        out.displacements.push_back(analysis.displacements[dof]);
        out.displacement_limits.push_back(model.displacement_limits[dof] * relax);
    }
    out.stresses = analysis.stresses;
    for (const Member& m : model.members) out.stress_limits.push_back(m.stress_limit * relax);
    return out;
}

}  // namespace

double true_violation(const TrussModel& model, const AnalysisResult& analysis) {
    const ChannelValues v = channel_values(model, analysis, 1.0);
    return violation_factor(v.displacements, v.displacement_limits) + violation_factor(v.stresses, v.stress_limits);
}

Assessment assess(const TrussModel& model, std::span<const double> areas, const ConstraintHandling& handling,
                  const Progress& progress) {
    Assessment a;
    a.analysis = analyze(model, areas);
    const ChannelValues relaxed = channel_values(model, a.analysis, handling.tolerance.multiplier(progress));
    a.displacement_violation = violation_factor(relaxed.displacements, relaxed.displacement_limits);
    a.stress_violation = violation_factor(relaxed.stresses, relaxed.stress_limits);
    a.displacement_penalty = penalty(a.displacement_violation, handling.displacement, progress);
    a.stress_penalty = penalty(a.stress_violation, handling.stress, progress);
    a.true_violation = true_violation(model, a.analysis);
    a.penalized_weight = a.analysis.weight * (1.0 + a.displacement_penalty + a.stress_penalty);
    return a;
}

double penalized_weight(const TrussModel& model, std::span<const double> areas, const ConstraintHandling& handling,
                        const Progress& progress) {
    return assess(model, areas, handling, progress).penalized_weight;
}

TrussProblem::TrussProblem(TrussModel model, ConstraintHandling handling)
    : model_(std::move(model)), handling_(std::move(handling)) {
    model_.validate();
    handling_.validate();
    variables_ = model_.area_specs();
}

Evaluation TrussProblem::evaluate(std::span<const double> x, const Progress& progress) const {
    const Assessment a = assess(model_, x, handling_, progress);
    return Evaluation{a.penalized_weight, -a.penalized_weight, a.true_violation <= handling_.feasibility_tolerance};
}

}  // namespace caga::truss

#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "caga/problem.hpp"

namespace caga::truss {

struct Node {
    double x = 0.0;
    double y = 0.0;
};

struct Member {
    std::size_t first = 0;   ///< node index (0-based)
    std::size_t second = 0;
    double youngs_modulus = 0.0;
    double density = 0.0;       ///< weight per unit volume
    double stress_limit = 0.0;  ///< allowable |sigma|
    VariableSpec area;          ///< section bounds and step
};

/// Planar pin-jointed truss. Units are whatever the data file uses, as long
/// as they are consistent (the shipped models use cm and kN).
struct TrussModel {
    std::string name;
    std::vector<Node> nodes;
    std::vector<Member> members;
    std::vector<std::array<bool, 2>> fixed;  ///< per node: x, y restrained
    std::vector<double> loads;               ///< 2 per node (fx, fy)
    std::vector<double> displacement_limits; ///< 2 per node; used on free dofs only

    std::size_t dof_count() const { return 2 * nodes.size(); }
    std::vector<std::size_t> free_dofs() const;
    double length(std::size_t member) const;
    std::vector<VariableSpec> area_specs() const;
    /// Throws ConfigError on dangling node references, zero-length members,
    /// non-positive material data or mis-sized vectors.
    void validate() const;
};

struct AnalysisResult {
    std::vector<double> displacements;  ///< all dofs, zero at supports
    std::vector<double> axial_forces;   ///< tension positive
    std::vector<double> stresses;       ///< tension positive
    double weight = 0.0;
};

/// Global stiffness over all dofs (singular until supports are removed).
Eigen::MatrixXd assemble_stiffness(const TrussModel& model, std::span<const double> areas);

/// Direct stiffness solve. BoundsError for areas outside their member's
/// bounds; InstabilityError if the restrained stiffness is not positive definite.
AnalysisResult analyze(const TrussModel& model, std::span<const double> areas);

/// Sum of Macaulay brackets <|value| / allowable - 1>.
double violation_factor(std::span<const double> values, std::span<const double> allowables);

/// Three-segment penalty parameters: P1 below v1, P2 in [v1, v2), P3 from v2 up.
struct PenaltyParameters {
    double v1 = 0.01;
    double v2 = 0.10;
    double p1 = 1.0;
    double p2 = 5.0;
    double p3 = 1000.0;

    void validate() const;
};

/// One constraint channel: an early and a late parameter set.
struct PenaltyConfig {
    PenaltyParameters early;
    PenaltyParameters late{0.001, 0.01, 5.0, 25.0, 10000.0};
    double switch_fraction = 0.5;

    const PenaltyParameters& at(const Progress& p) const {
        return p.fraction() >= switch_fraction ? late : early;
    }
};

/// p * violation^2 with p picked from the active segment; zero when feasible.
double penalty(double violation, const PenaltyConfig& config, const Progress& progress);

struct ToleranceStep {
    double start_fraction = 0.0;
    double multiplier = 1.0;
};

/// Staged relaxation of every constraint limit; the last step should be 1.0.
struct ToleranceSchedule {
    std::vector<ToleranceStep> steps{{0.0, 2.001 / 2.0}, {0.4, 2.0005 / 2.0}, {0.7, 1.0}};

    double multiplier(const Progress& p) const;
    void validate() const;
};

struct ConstraintHandling {
    PenaltyConfig displacement;
    PenaltyConfig stress;
    ToleranceSchedule tolerance;
    /// A design counts as feasible when its unrelaxed violation factor
    /// (both channels) does not exceed this.
    double feasibility_tolerance = 1e-4;

    void validate() const;
};

struct Assessment {
    AnalysisResult analysis;
    double displacement_violation = 0.0;  ///< against relaxed limits
    double stress_violation = 0.0;
    double displacement_penalty = 0.0;
    double stress_penalty = 0.0;
    double true_violation = 0.0;  ///< both channels, unrelaxed limits
    double penalized_weight = 0.0;
};

Assessment assess(const TrussModel& model, std::span<const double> areas, const ConstraintHandling& handling,
                  const Progress& progress);

/// W (1 + P_d + P_s)
double penalized_weight(const TrussModel& model, std::span<const double> areas,
                        const ConstraintHandling& handling, const Progress& progress);

/// Unrelaxed violation factors, displacement and stress channels summed.
double true_violation(const TrussModel& model, const AnalysisResult& analysis);

/// "ten_bar" or "seventeen_bar"; ConfigError otherwise.
TrussModel benchmark_model(std::string_view name);
std::vector<std::string> benchmark_names();

/// Text model format; see data/README.md.
TrussModel parse_truss(std::string_view text);
TrussModel load_truss(const std::filesystem::path& path);
/// Benchmark name or path to a model file.
TrussModel resolve_model(std::string_view name_or_path);

/// Truss sizing as an engine problem: raw = penalized weight (minimized).
class TrussProblem final : public Problem {
public:
    TrussProblem(TrussModel model, ConstraintHandling handling = {});

    std::string name() const override { return model_.name; }
    Sense sense() const override { return Sense::minimize; }
    const std::vector<VariableSpec>& variables() const override { return variables_; }
    Evaluation evaluate(std::span<const double> x, const Progress& progress) const override;

    const TrussModel& model() const { return model_; }
    const ConstraintHandling& handling() const { return handling_; }

private:
    TrussModel model_;
    ConstraintHandling handling_;
    std::vector<VariableSpec> variables_;
};

}  // namespace caga::truss

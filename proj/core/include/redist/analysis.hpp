#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "redist/axioms.hpp"
#include "redist/rule.hpp"
#include "redist/sampling.hpp"
#include "redist/scalar_fn.hpp"

namespace redist {

struct ABPoint {
    double a = 0.0;
    double b = 0.0;
};

struct ProbeAgents {
    std::size_t raised = 0;   // agent whose income or need is pushed up
    std::size_t lowered = 1;  // agent that absorbs the opposite change
};

/// Reads the coefficients a(Y, Z), b(Y, Z) of a rule in the form
///   R_i = Y/n + (y_i - Y/n) a + (z_i - Z/n) b
/// from two probes built around the flat problem (everyone at Y/n, Z/n),
/// which any rule with equal treatment pays Y/n per agent:
///   - need probe: flat incomes, needs moved by +-Z/(2n) on the probe pair;
///   - income probe: flat needs, incomes moved by +-(|Y|/(2n) + 1).
/// For AB rules the result depends on Y and Z only through t = Y/Z.
ABPoint extract_ab(const Rule& rule, double total_income, double total_need, std::size_t agents,
                   ProbeAgents probe = {});

struct ABProfile {
    std::vector<double> grid;  // t values, strictly increasing
    std::vector<double> a_values;
    std::vector<double> b_values;
};

/// extract_ab at Y = t * base_need, Z = base_need for every t on the grid.
ABProfile profile_rule(const Rule& rule, std::span<const double> grid, std::size_t agents,
                       double base_need);

/// lo, lo + step, ... up to hi inclusive (hi is kept when within step * 1e-9).
std::vector<double> make_grid(double lo, double hi, double step);
/// Parses "lo:hi:step".
std::vector<double> parse_grid(std::string_view text);

enum class Shape { Zero, One, Constant, Identity, Scale, Affine, Other };
std::string_view to_string(Shape shape) noexcept;

enum class Label { LaissezFaire, Proportional, Full, NeedAdjustedFull, GenericAB, NonAB };
std::string_view to_string(Label label) noexcept;

/// Shape of sampled values f(t_k) against the grid, comparing within
/// tol * max(1, |t|). Exact forms only: no regression.
Shape fit_shape(std::span<const double> grid, std::span<const double> values, double tol);

struct Classification {
    Label label = Label::NonAB;
    ABProfile profile;
    Shape a_shape = Shape::Other;
    Shape b_shape = Shape::Other;
    /// Closed forms matching the profile when both shapes are recognised and
    /// they reproduce the rule off the grid as well.
    std::optional<ScalarFn> fitted_a, fitted_b;
    /// Worst gap (units of max(1, |Y|, Z)) between the rule and its AB
    /// reconstruction on fresh random problems.
    double residual = 0.0;
    double fitted_residual = 0.0;
    std::size_t problems_checked = 0;
};

/// Classifies against the characterised families. Labels are statements of
/// consistency with the sampled evidence, not proofs.
Classification classify(const Rule& rule, std::span<const double> grid, const SampleConfig& cfg,
                        double tol);

/// Grid used when callers do not supply one.
std::vector<double> default_classification_grid();

struct Implication {
    std::string premise;     // e.g. "core+nat+stability+dummy"
    std::string conclusion;  // e.g. "laissez-faire or proportional"
    bool premise_holds = false;
    bool conclusion_holds = false;
    bool consistent() const noexcept { return !premise_holds || conclusion_holds; }
};

struct CharacterizationReport {
    std::vector<AxiomReport> axioms;
    Classification classification;
    std::vector<Implication> implications;
    bool consistent = true;
};

/// Runs the six main axioms and classify(), then checks that every
/// characterisation whose axioms all passed agrees with the label.
CharacterizationReport verify_characterization(const Rule& rule, const SampleConfig& cfg,
                                               double tol);

}  // namespace redist

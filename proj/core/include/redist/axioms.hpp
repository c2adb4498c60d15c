#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "redist/problem.hpp"
#include "redist/rule.hpp"
#include "redist/sampling.hpp"

namespace redist {

enum class Axiom {
    Homogeneity,
    EqualTreatment,
    Continuity,
    NoAdvantageousTransfer,
    Stability,
    Dummy,
    IncomeAdditivity,
    DualIncomeAdditivity,
};

/// Identifier used on the command line and in reports ("nat", "dummy", ...).
std::string_view to_string(Axiom axiom) noexcept;
Axiom parse_axiom(std::string_view name);
/// Accepts "all", "core" (homogeneity, equal_treatment, continuity) and
/// comma-separated identifiers; duplicates are dropped, order is kept.
std::vector<Axiom> parse_axiom_list(std::string_view text);
std::span<const Axiom> all_axioms() noexcept;
std::span<const Axiom> core_axioms() noexcept;

// One sampled instance per axiom. Each holds everything needed to re-run the
// predicate, so a failing case is a self-contained witness.
namespace cases {
struct Homogeneity {
    Problem problem;
    double factor;
};
struct EqualTreatment {
    Problem problem;  // agents `first` and `second` are twins
    std::size_t first, second;
};
struct Continuity {
    Problem problem;
    std::vector<double> income_direction, need_direction;
    double step;  // the k-th probe moves step * 2^-k along the direction
    int halvings;
};
struct NoAdvantageousTransfer {
    Problem problem;
    Problem reallocated;  // differs from `problem` only inside `group`
    std::vector<std::size_t> group;
};
struct Stability {
    Problem problem;
};
struct Dummy {
    Problem problem;  // agent has zero income and zero need
    std::size_t agent;
};
struct Additivity {
    Problem problem;
    std::vector<double> extra_income;  // y', sharing the problem's needs
};
}  // namespace cases

using AxiomCase = std::variant<cases::Homogeneity, cases::EqualTreatment, cases::Continuity,
                               cases::NoAdvantageousTransfer, cases::Stability, cases::Dummy,
                               cases::Additivity>;

/// Result of running one predicate: what the axiom demands, what the rule
/// produced, and the max-norm gap between them in units of max(1, |Y|, Z).
struct AxiomOutcome {
    std::vector<double> expected;
    std::vector<double> observed;
    double deviation = 0.0;
};

AxiomCase sample_case(Axiom axiom, Rng& rng, const SampleConfig& cfg);
AxiomOutcome assess(Axiom axiom, const Rule& rule, const AxiomCase& instance);

struct Counterexample {
    AxiomCase instance;
    AxiomOutcome outcome;
};

struct AxiomReport {
    Axiom axiom;
    Rule rule;
    bool passed = true;
    std::size_t trials_run = 0;
    double tolerance = 0.0;
    std::optional<Counterexample> counterexample;
};

/// Runs cfg.trials sampled instances and stops at the first violation, which
/// is then shrunk (agents dropped, perturbations halved) while it still fails.
AxiomReport check_axiom(Axiom axiom, const Rule& rule, const SampleConfig& cfg, double tol);

/// check_axiom per entry, each with a sub-seed derived from cfg.seed and the
/// axiom, so reports do not depend on list order.
std::vector<AxiomReport> axiom_suite(const Rule& rule, std::span<const Axiom> axioms,
                                     const SampleConfig& cfg, double tol);

/// Default tolerance for all sampled checks.
inline constexpr double kDefaultTolerance = 1e-9;

}  // namespace redist

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "redist/problem.hpp"
#include "redist/scalar_fn.hpp"

namespace redist {

/// Per-agent payoffs produced by a rule; always sums to the problem's Y.
class Allocation {
public:
    Allocation() = default;
    explicit Allocation(std::vector<double> values) : values_(std::move(values)) {}

    std::size_t size() const noexcept { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }
    std::span<const double> values() const noexcept { return values_; }
    const std::vector<double>& vector() const noexcept { return values_; }

    friend bool operator==(const Allocation&, const Allocation&) = default;

private:
    std::vector<double> values_;
};

struct RuleNode;

/// Immutable, cheaply copyable description of a redistribution rule.
class Rule {
public:
    using CustomFn = std::function<std::vector<double>(const Problem&)>;

    static Rule laissez_faire();
    static Rule full();
    static Rule proportional();
    static Rule need_adjusted_full();
    /// Y/n + (y_i - Y/n) A(t) + (z_i - Z/n) B(t), t = Y/Z.
    static Rule ab(ScalarFn a, ScalarFn b);
    /// A(t) y_i + (1 - A(t)) t z_i.
    static Rule a_family(ScalarFn a);
    /// Y/n + (z_i - Z/n) B(t).
    static Rule b_family(ScalarFn b);
    static Rule linear(double alpha1, double alpha2);
    static Rule linear_dual(double alpha1, double alpha2);
    /// weight * first + (1 - weight) * second, weight in [0, 1].
    static Rule convex(Rule first, Rule second, double weight);
    static Rule dual(Rule inner);
    /// Black-box rule; the function must return one payoff per agent.
    static Rule custom(std::string name, CustomFn fn);

    const RuleNode& node() const noexcept { return *node_; }

    /// Text in the rule-spec grammar (custom rules render as "custom:<name>").
    std::string to_string() const;

    friend bool operator==(const Rule& lhs, const Rule& rhs);

private:
    explicit Rule(std::shared_ptr<const RuleNode> node) : node_(std::move(node)) {}
    static Rule wrap(RuleNode node);

    std::shared_ptr<const RuleNode> node_;
};

namespace node {
struct LaissezFaire {};
struct Full {};
struct Proportional {};
struct NeedAdjustedFull {};
struct AB {
    ScalarFn a, b;
};
struct AFamily {
    ScalarFn a;
};
struct BFamily {
    ScalarFn b;
};
struct Linear {
    double alpha1, alpha2;
};
struct LinearDual {
    double alpha1, alpha2;
};
struct Convex {
    Rule first, second;
    double weight;
};
struct Dual {
    Rule inner;
};
struct Custom {
    std::string name;
    Rule::CustomFn fn;
};
}  // namespace node

struct RuleNode {
    std::variant<node::LaissezFaire, node::Full, node::Proportional, node::NeedAdjustedFull,
                 node::AB, node::AFamily, node::BFamily, node::Linear, node::LinearDual,
                 node::Convex, node::Dual, node::Custom>
        value;
};

/// Applies the rule. Throws Error(Unbalanced) if the result does not sum to Y
/// within balance_tolerance, which for the built-in variants indicates a bug.
Allocation evaluate(const Rule& rule, const Problem& problem);

struct BalanceAudit {
    std::uint64_t evaluations = 0;
    std::uint64_t violations = 0;
};

/// Process-wide count of evaluate() calls and balance failures.
BalanceAudit balance_audit() noexcept;

/// The (A, B) coefficient pair when the rule has a closed form in the AB
/// family; nullopt for custom rules (or trees containing one).
std::optional<std::pair<ScalarFn, ScalarFn>> ab_form(const Rule& rule);

struct EquivalenceVerdict {
    bool equivalent = true;
    double max_deviation = 0.0;
    std::optional<std::size_t> witness;  // index into the problem list
};

EquivalenceVerdict equivalent_on(const Rule& first, const Rule& second,
                                 std::span<const Problem> problems, double tol);

/// Max-norm distance between two equally sized vectors.
double max_abs_difference(std::span<const double> a, std::span<const double> b);

}  // namespace redist

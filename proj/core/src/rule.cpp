#include "redist/rule.hpp"

#include <atomic>
#include <cmath>
#include <type_traits>

#include "redist/duality.hpp"
#include "redist/error.hpp"

namespace redist {

namespace {

std::atomic<std::uint64_t> g_evaluations{0};
std::atomic<std::uint64_t> g_violations{0};

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) throw Error(ErrorCode::NonFinite, std::string(what) + " must be finite");
}

std::vector<double> ab_allocation(const Problem& p, double a, double b) {
    const double n = static_cast<double>(p.size());
    const double mean_income = p.total_income() / n;
    const double mean_need = p.total_need() / n;
    const auto y = p.incomes();
    const auto z = p.needs();
    std::vector<double> x(p.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        x[i] = mean_income + (y[i] - mean_income) * a + (z[i] - mean_need) * b;
    return x;
}

std::vector<double> compute(const Rule& rule, const Problem& p) {
    const double n = static_cast<double>(p.size());
    const double Y = p.total_income();
    const double Z = p.total_need();
    const double t = p.income_need_ratio();
    const auto y = p.incomes();
    const auto z = p.needs();
    std::vector<double> x(p.size());

    return std::visit(
        overloaded{
            [&](const node::LaissezFaire&) { return std::vector<double>(y.begin(), y.end()); },
            [&](const node::Full&) {
                std::fill(x.begin(), x.end(), Y / n);
                return x;
            },
            [&](const node::Proportional&) {
                for (std::size_t i = 0; i < x.size(); ++i) x[i] = z[i] / Z * Y;
                return x;
            },
            [&](const node::NeedAdjustedFull&) {
                for (std::size_t i = 0; i < x.size(); ++i) x[i] = z[i] + (Y - Z) / n;
                return x;
            },
            [&](const node::AB& r) { return ab_allocation(p, r.a(t), r.b(t)); },
            [&](const node::AFamily& r) {
                const double a = r.a(t);
                for (std::size_t i = 0; i < x.size(); ++i) x[i] = a * y[i] + (1.0 - a) * t * z[i];
                return x;
            },
            [&](const node::BFamily& r) { return ab_allocation(p, 0.0, r.b(t)); },
            [&](const node::Linear& r) {
                const double rest = 1.0 - r.alpha1 - r.alpha2;
                for (std::size_t i = 0; i < x.size(); ++i)
                    x[i] = r.alpha1 * y[i] + r.alpha2 * (z[i] / Z) * Y + rest * Y / n;
                return x;
            },
            [&](const node::LinearDual& r) {
                const double rest = 1.0 - r.alpha1 - r.alpha2;
                for (std::size_t i = 0; i < x.size(); ++i)
                    x[i] = r.alpha1 * y[i] + r.alpha2 * (z[i] / Z) * Y + rest * (z[i] + (Y - Z) / n);
                return x;
            },
            [&](const node::Convex& r) {
                const auto first = evaluate(r.first, p);
                const auto second = evaluate(r.second, p);
                for (std::size_t i = 0; i < x.size(); ++i)
                    x[i] = r.weight * first[i] + (1.0 - r.weight) * second[i];
                return x;
            },
            [&](const node::Dual& r) { return dual_evaluate(r.inner, p).vector(); },
            [&](const node::Custom& r) {
                auto out = r.fn(p);
                if (out.size() != p.size())
                    throw Error(ErrorCode::LengthMismatch,
                                "custom rule '" + r.name + "' returned " +
                                    std::to_string(out.size()) + " payoffs for " +
                                    std::to_string(p.size()) + " agents");
                return out;
            },
        },
        rule.node().value);
}

}  // namespace

Rule Rule::wrap(RuleNode node) { return Rule(std::make_shared<const RuleNode>(std::move(node))); }

Rule Rule::laissez_faire() { return wrap({node::LaissezFaire{}}); }
Rule Rule::full() { return wrap({node::Full{}}); }
Rule Rule::proportional() { return wrap({node::Proportional{}}); }
Rule Rule::need_adjusted_full() { return wrap({node::NeedAdjustedFull{}}); }
Rule Rule::ab(ScalarFn a, ScalarFn b) { return wrap({node::AB{std::move(a), std::move(b)}}); }
Rule Rule::a_family(ScalarFn a) { return wrap({node::AFamily{std::move(a)}}); }
Rule Rule::b_family(ScalarFn b) { return wrap({node::BFamily{std::move(b)}}); }

Rule Rule::linear(double alpha1, double alpha2) {
    require_finite(alpha1, "alpha1");
    require_finite(alpha2, "alpha2");
    return wrap({node::Linear{alpha1, alpha2}});
}

Rule Rule::linear_dual(double alpha1, double alpha2) {
    require_finite(alpha1, "alpha1");
    require_finite(alpha2, "alpha2");
    return wrap({node::LinearDual{alpha1, alpha2}});
}

Rule Rule::convex(Rule first, Rule second, double weight) {
    if (!(weight >= 0.0 && weight <= 1.0))
        throw Error(ErrorCode::InvalidWeight,
                    "convex weight " + format_real(weight) + " is outside [0, 1]");
    return wrap({node::Convex{std::move(first), std::move(second), weight}});
}

Rule Rule::dual(Rule inner) { return wrap({node::Dual{std::move(inner)}}); }

Rule Rule::custom(std::string name, CustomFn fn) {
    if (!fn) throw Error(ErrorCode::InvalidArgument, "custom rule is empty");
    return wrap({node::Custom{std::move(name), std::move(fn)}});
}

std::string Rule::to_string() const {
    return std::visit(
        overloaded{
            [](const node::LaissezFaire&) -> std::string { return "lf"; },
            [](const node::Full&) -> std::string { return "full"; },
            [](const node::Proportional&) -> std::string { return "prop"; },
            [](const node::NeedAdjustedFull&) -> std::string { return "nafr"; },
            [](const node::AB& r) { return "ab:A=" + r.a.to_string() + ",B=" + r.b.to_string(); },
            [](const node::AFamily& r) { return "afam:A=" + r.a.to_string(); },
            [](const node::BFamily& r) { return "bfam:B=" + r.b.to_string(); },
            [](const node::Linear& r) {
                return "lin:" + format_real(r.alpha1) + "," + format_real(r.alpha2);
            },
            [](const node::LinearDual& r) {
                return "lindual:" + format_real(r.alpha1) + "," + format_real(r.alpha2);
            },
            [](const node::Convex& r) {
                return "convex(" + r.first.to_string() + ";" + r.second.to_string() + ";" +
                       format_real(r.weight) + ")";
            },
            [](const node::Dual& r) { return "dual(" + r.inner.to_string() + ")"; },
            [](const node::Custom& r) { return "custom:" + r.name; },
        },
        node_->value);
}

bool operator==(const Rule& lhs, const Rule& rhs) {
    if (lhs.node_ == rhs.node_) return true;
    const auto& a = lhs.node_->value;
    const auto& b = rhs.node_->value;
    if (a.index() != b.index()) return false;
    return std::visit(
        [&](const auto& left) -> bool {
            using T = std::decay_t<decltype(left)>;
            const auto& right = std::get<T>(b);
            if constexpr (std::is_same_v<T, node::AB>) return left.a == right.a && left.b == right.b;
            else if constexpr (std::is_same_v<T, node::AFamily>) return left.a == right.a;
            else if constexpr (std::is_same_v<T, node::BFamily>) return left.b == right.b;
            else if constexpr (std::is_same_v<T, node::Linear> || std::is_same_v<T, node::LinearDual>)
                return left.alpha1 == right.alpha1 && left.alpha2 == right.alpha2;
            else if constexpr (std::is_same_v<T, node::Convex>)
                return left.weight == right.weight && left.first == right.first &&
                       left.second == right.second;
            else if constexpr (std::is_same_v<T, node::Dual>) return left.inner == right.inner;
            else if constexpr (std::is_same_v<T, node::Custom>) return left.name == right.name;
            else return true;
        },
        a);
}

Allocation evaluate(const Rule& rule, const Problem& problem) {
    auto x = compute(rule, problem);
    g_evaluations.fetch_add(1, std::memory_order_relaxed);
    BalanceVerdict verdict;
    try {
        verdict = check_allocation(problem, x);
    } catch (const Error&) {
        g_violations.fetch_add(1, std::memory_order_relaxed);
        throw;
    }
    if (!verdict.balanced) {
        g_violations.fetch_add(1, std::memory_order_relaxed);
        throw Error(ErrorCode::Unbalanced, "rule " + rule.to_string() + " leaves residual " +
                                               format_real(verdict.residual));
    }
    return Allocation(std::move(x));
}

BalanceAudit balance_audit() noexcept {
    return {g_evaluations.load(std::memory_order_relaxed),
            g_violations.load(std::memory_order_relaxed)};
}

std::optional<std::pair<ScalarFn, ScalarFn>> ab_form(const Rule& rule) {
    using Form = std::optional<std::pair<ScalarFn, ScalarFn>>;
    const auto zero = ScalarFn::constant(0.0);
    const auto one = ScalarFn::constant(1.0);
    return std::visit(
        overloaded{
            [&](const node::LaissezFaire&) -> Form { return std::pair{one, zero}; },
            [&](const node::Full&) -> Form { return std::pair{zero, zero}; },
            [&](const node::Proportional&) -> Form { return std::pair{zero, ScalarFn::identity()}; },
            [&](const node::NeedAdjustedFull&) -> Form { return std::pair{zero, one}; },
            [&](const node::AB& r) -> Form { return std::pair{r.a, r.b}; },
            [&](const node::AFamily& r) -> Form {
                // B(t) = (1 - A(t)) t
                const std::pair<double, ScalarFn> terms[] = {{1.0, ScalarFn::identity()},
                                                             {-1.0, times_identity(r.a)}};
                return std::pair{r.a, linear_combination(terms)};
            },
            [&](const node::BFamily& r) -> Form { return std::pair{zero, r.b}; },
            [&](const node::Linear& r) -> Form {
                return std::pair{ScalarFn::constant(r.alpha1),
                                 ScalarFn::from_coefficients({0.0, r.alpha2})};
            },
            [&](const node::LinearDual& r) -> Form {
                return std::pair{ScalarFn::constant(r.alpha1),
                                 ScalarFn::from_coefficients({1.0 - r.alpha1 - r.alpha2, r.alpha2})};
            },
            [&](const node::Convex& r) -> Form {
                auto first = ab_form(r.first);
                auto second = ab_form(r.second);
                if (!first || !second) return std::nullopt;
                const double w = r.weight;
                const std::pair<double, ScalarFn> as[] = {{w, first->first}, {1.0 - w, second->first}};
                const std::pair<double, ScalarFn> bs[] = {{w, first->second}, {1.0 - w, second->second}};
                return std::pair{linear_combination(as), linear_combination(bs)};
            },
            [&](const node::Dual& r) -> Form {
                auto inner = ab_form(r.inner);
                if (!inner) return std::nullopt;
                return dual_ab(inner->first, inner->second);
            },
            [&](const node::Custom&) -> Form { return std::nullopt; },
        },
        rule.node().value);
}

double max_abs_difference(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size())
        throw Error(ErrorCode::LengthMismatch, "cannot compare vectors of different length");
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = std::abs(a[i] - b[i]);
        if (!(d <= worst)) worst = d;  // NaN propagates as a failure
    }
    return worst;
}

EquivalenceVerdict equivalent_on(const Rule& first, const Rule& second,
                                 std::span<const Problem> problems, double tol) {
    if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
    EquivalenceVerdict verdict;
    for (std::size_t k = 0; k < problems.size(); ++k) {
        const double d = max_abs_difference(evaluate(first, problems[k]).values(),
                                            evaluate(second, problems[k]).values());
        if (!(d <= verdict.max_deviation)) {
            verdict.max_deviation = d;
            verdict.witness = k;
        }
    }
    verdict.equivalent = verdict.max_deviation <= tol;
    if (verdict.equivalent) verdict.witness.reset();
    return verdict;
}

}  // namespace redist

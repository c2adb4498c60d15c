#include "redist/analysis.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "redist/error.hpp"

namespace redist {

namespace {

constexpr std::size_t kProfileAgents = 4;
constexpr double kProfileBaseNeed = 2.0;
constexpr std::uint64_t kReconstructionStream = 0xab5eed;
constexpr std::size_t kMaxGridPoints = 1'000'000;

double point_tolerance(double tol, double t, double value) {
    return tol * std::max({1.0, std::abs(t), std::abs(value)});
}

template <class Pred>
bool all_points(std::span<const double> grid, std::span<const double> values, double tol, Pred expected) {
    for (std::size_t k = 0; k < grid.size(); ++k) {
        if (!(std::abs(values[k] - expected(grid[k])) <= point_tolerance(tol, grid[k], values[k])))
            return false;
    }
    return true;
}

/// Closed form for a recognised shape, read off the sampled values.
std::optional<ScalarFn> shape_function(Shape shape, std::span<const double> grid,
                                       std::span<const double> values) {
    switch (shape) {
        case Shape::Zero: return ScalarFn::constant(0.0);
        case Shape::One: return ScalarFn::constant(1.0);
        case Shape::Constant: return ScalarFn::constant(values.front());
        case Shape::Identity: return ScalarFn::identity();
        case Shape::Scale: {
            const auto k = static_cast<std::size_t>(
                std::max_element(grid.begin(), grid.end(),
                                 [](double l, double r) { return std::abs(l) < std::abs(r); }) -
                grid.begin());
            return ScalarFn::scale(values[k] / grid[k]);
        }
        case Shape::Affine: {
            const double slope = (values.back() - values.front()) / (grid.back() - grid.front());
            return ScalarFn::affine(slope, values.front() - slope * grid.front());
        }
        case Shape::Other: return std::nullopt;
    }
    return std::nullopt;
}

std::vector<double> ab_reconstruction(const Problem& p, double a, double b) {
    const double n = static_cast<double>(p.size());
    const double mean_income = p.total_income() / n;
    const double mean_need = p.total_need() / n;
    std::vector<double> x(p.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        x[i] = mean_income + (p.incomes()[i] - mean_income) * a + (p.needs()[i] - mean_need) * b;
    return x;
}

void validate_grid(std::span<const double> grid) {
    for (std::size_t k = 0; k < grid.size(); ++k) {
        if (!std::isfinite(grid[k])) throw Error(ErrorCode::NonFinite, "grid values must be finite");
        if (k > 0 && !(grid[k] > grid[k - 1]))
            throw Error(ErrorCode::InvalidArgument, "grid must be strictly increasing");
    }
}

double parse_real(std::string_view text) {
    double value = 0.0;
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || end != text.data() + text.size() || !std::isfinite(value))
        throw Error(ErrorCode::ParseError, "'" + std::string(text) + "' is not a finite number");
    return value;
}

bool all_passed(const std::vector<AxiomReport>& reports, std::initializer_list<Axiom> wanted) {
    for (auto axiom : wanted) {
        auto it = std::find_if(reports.begin(), reports.end(),
                               [&](const AxiomReport& r) { return r.axiom == axiom; });
        if (it == reports.end() || !it->passed) return false;
    }
    return true;
}

}  // namespace

ABPoint extract_ab(const Rule& rule, double total_income, double total_need, std::size_t agents,
                   ProbeAgents probe) {
    if (agents < 2) throw Error(ErrorCode::NotApplicable, "probing needs at least two agents");
    if (!std::isfinite(total_income) || !std::isfinite(total_need))
        throw Error(ErrorCode::NonFinite, "aggregates must be finite");
    if (!(total_need > 0.0)) throw Error(ErrorCode::DegenerateProbe, "aggregate need must be positive");
    if (probe.raised >= agents || probe.lowered >= agents || probe.raised == probe.lowered)
        throw Error(ErrorCode::InvalidArgument, "probe agents must be two distinct agents");

    const double n = static_cast<double>(agents);
    const std::vector<double> flat_incomes(agents, total_income / n);
    const std::vector<double> flat_needs(agents, total_need / n);

    ABPoint point;
    {
        auto z = flat_needs;
        const double shift = total_need / (2.0 * n);
        z[probe.raised] += shift;
        z[probe.lowered] -= shift;
        if (z[probe.lowered] < 0.0) throw Error(ErrorCode::DegenerateProbe, "need probe leaves z < 0");
        const auto p = Problem::from_profiles(flat_incomes, std::move(z));
        const auto x = evaluate(rule, p);
        point.b = (x[probe.raised] - p.total_income() / n) / (p.needs()[probe.raised] - p.total_need() / n);
    }
    {
        auto y = flat_incomes;
        const double shift = std::abs(total_income) / (2.0 * n) + 1.0;
        y[probe.raised] += shift;
        y[probe.lowered] -= shift;
        const auto p = Problem::from_profiles(std::move(y), flat_needs);
        const auto x = evaluate(rule, p);
        const double mean_income = p.total_income() / n;
        point.a = (x[probe.raised] - mean_income) / (p.incomes()[probe.raised] - mean_income);
    }
    return point;
}

ABProfile profile_rule(const Rule& rule, std::span<const double> grid, std::size_t agents,
                       double base_need) {
    validate_grid(grid);
    if (!(base_need > 0.0) || !std::isfinite(base_need))
        throw Error(ErrorCode::InvalidArgument, "base need must be positive");
    ABProfile profile;
    profile.grid.assign(grid.begin(), grid.end());
    for (double t : grid) {
        const auto point = extract_ab(rule, t * base_need, base_need, agents);
        profile.a_values.push_back(point.a);
        profile.b_values.push_back(point.b);
    }
    return profile;
}

std::vector<double> make_grid(double lo, double hi, double step) {
    if (!std::isfinite(lo) || !std::isfinite(hi) || !std::isfinite(step))
        throw Error(ErrorCode::NonFinite, "grid bounds must be finite");
    if (!(step > 0.0)) throw Error(ErrorCode::InvalidArgument, "grid step must be positive");
    if (lo > hi) throw Error(ErrorCode::InvalidArgument, "grid lower bound exceeds upper bound");
    const double slack = step * 1e-9;
    if ((hi - lo) / step > static_cast<double>(kMaxGridPoints))
        throw Error(ErrorCode::InvalidArgument, "grid has too many points");
    std::vector<double> grid;
    for (std::size_t k = 0;; ++k) {
        double t = lo + static_cast<double>(k) * step;
        if (t > hi + slack) break;
        if (std::abs(t - hi) <= slack) t = hi;
        grid.push_back(t);
    }
    return grid;
}

std::vector<double> parse_grid(std::string_view text) {
    const auto first = text.find(':');
    const auto second = first == std::string_view::npos ? first : text.find(':', first + 1);
    if (second == std::string_view::npos || text.find(':', second + 1) != std::string_view::npos)
        throw Error(ErrorCode::ParseError, "grid '" + std::string(text) + "' is not lo:hi:step");
    return make_grid(parse_real(text.substr(0, first)),
                     parse_real(text.substr(first + 1, second - first - 1)),
                     parse_real(text.substr(second + 1)));
}

std::string_view to_string(Shape shape) noexcept {
    switch (shape) {
        case Shape::Zero: return "zero";
        case Shape::One: return "one";
        case Shape::Constant: return "constant";
        case Shape::Identity: return "identity";
        case Shape::Scale: return "scale";
        case Shape::Affine: return "affine";
        case Shape::Other: return "other";
    }
    return "other";
}

std::string_view to_string(Label label) noexcept {
    switch (label) {
        case Label::LaissezFaire: return "laissez-faire";
        case Label::Proportional: return "proportional";
        case Label::Full: return "full";
        case Label::NeedAdjustedFull: return "need-adjusted-full";
        case Label::GenericAB: return "generic-AB";
        case Label::NonAB: return "non-AB";
    }
    return "non-AB";
}

Shape fit_shape(std::span<const double> grid, std::span<const double> values, double tol) {
    if (grid.size() != values.size() || grid.empty())
        throw Error(ErrorCode::LengthMismatch, "grid and values must be equally sized and non-empty");
    if (all_points(grid, values, tol, [](double) { return 0.0; })) return Shape::Zero;
    if (all_points(grid, values, tol, [](double) { return 1.0; })) return Shape::One;
    const double first = values.front();
    if (all_points(grid, values, tol, [&](double) { return first; })) return Shape::Constant;
    if (all_points(grid, values, tol, [](double t) { return t; })) return Shape::Identity;
    if (grid.size() < 2) return Shape::Other;
    if (auto f = shape_function(Shape::Scale, grid, values);
        f && all_points(grid, values, tol, [&](double t) { return (*f)(t); }))
        return Shape::Scale;
    if (auto f = shape_function(Shape::Affine, grid, values);
        f && all_points(grid, values, tol, [&](double t) { return (*f)(t); }))
        return Shape::Affine;
    return Shape::Other;
}

std::vector<double> default_classification_grid() { return {-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0}; }

Classification classify(const Rule& rule, std::span<const double> grid, const SampleConfig& cfg,
                        double tol) {
    if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
    validate_grid(grid);
    const bool has_negative = std::any_of(grid.begin(), grid.end(), [](double t) { return t < 0.0; });
    const bool has_zero = std::any_of(grid.begin(), grid.end(), [](double t) { return t == 0.0; });
    const bool has_positive = std::any_of(grid.begin(), grid.end(), [](double t) { return t > 0.0; });
    if (grid.size() < 5 || !has_negative || !has_zero || !has_positive)
        throw Error(ErrorCode::InvalidArgument,
                    "classification grid needs at least 5 points covering t < 0, t = 0 and t > 0");
    cfg.validate();

    Classification c;
    c.profile = profile_rule(rule, grid, kProfileAgents, kProfileBaseNeed);
    c.a_shape = fit_shape(c.profile.grid, c.profile.a_values, tol);
    c.b_shape = fit_shape(c.profile.grid, c.profile.b_values, tol);
    auto fitted_a = shape_function(c.a_shape, c.profile.grid, c.profile.a_values);
    auto fitted_b = shape_function(c.b_shape, c.profile.grid, c.profile.b_values);

    // Off-grid check: probe each fresh problem at its own aggregates and
    // compare the rule with its AB reconstruction.
    for (std::size_t k = 0; k < cfg.trials; ++k) {
        Rng rng(cfg.seed, kReconstructionStream, k);
        const auto p = sample_problem(rng, cfg, 2);
        const auto x = evaluate(rule, p);
        const auto point = extract_ab(rule, p.total_income(), p.total_need(), p.size());
        c.residual = std::max(
            c.residual, max_abs_difference(x.values(), ab_reconstruction(p, point.a, point.b)) / p.scale());
        if (fitted_a && fitted_b) {
            const double t = p.income_need_ratio();
            c.fitted_residual = std::max(
                c.fitted_residual,
                max_abs_difference(x.values(), ab_reconstruction(p, (*fitted_a)(t), (*fitted_b)(t))) /
                    p.scale());
        }
        ++c.problems_checked;
    }

    if (!(c.residual <= tol)) {
        c.label = Label::NonAB;
        return c;
    }
    c.label = Label::GenericAB;
    if (!fitted_a || !fitted_b || !(c.fitted_residual <= tol)) return c;
    c.fitted_a = std::move(fitted_a);
    c.fitted_b = std::move(fitted_b);
    if (c.a_shape == Shape::One && c.b_shape == Shape::Zero) c.label = Label::LaissezFaire;
    else if (c.a_shape == Shape::Zero && c.b_shape == Shape::Identity) c.label = Label::Proportional;
    else if (c.a_shape == Shape::Zero && c.b_shape == Shape::Zero) c.label = Label::Full;
    else if (c.a_shape == Shape::Zero && c.b_shape == Shape::One) c.label = Label::NeedAdjustedFull;
    return c;
}

CharacterizationReport verify_characterization(const Rule& rule, const SampleConfig& cfg,
                                               double tol) {
    static constexpr Axiom kMain[] = {Axiom::Homogeneity, Axiom::EqualTreatment, Axiom::Continuity,
                                      Axiom::NoAdvantageousTransfer, Axiom::Stability, Axiom::Dummy};
    CharacterizationReport report;
    report.axioms = axiom_suite(rule, kMain, cfg, tol);
    report.classification = classify(rule, default_classification_grid(), cfg, tol);

    const auto& cls = report.classification;
    const bool is_ab = cls.label != Label::NonAB;
    const auto& prof = cls.profile;
    bool afam_shape = is_ab;
    for (std::size_t k = 0; k < prof.grid.size(); ++k) {
        const double t = prof.grid[k];
        const double b = prof.b_values[k];
        if (!(std::abs(b - (1.0 - prof.a_values[k]) * t) <= point_tolerance(tol, t, b)))
            afam_shape = false;
    }

    using enum Axiom;
    report.implications = {
        {"core+nat+stability+dummy", "laissez-faire or proportional",
         all_passed(report.axioms, {Homogeneity, EqualTreatment, Continuity, NoAdvantageousTransfer,
                                    Stability, Dummy}),
         cls.label == Label::LaissezFaire || cls.label == Label::Proportional},
        {"core+nat+stability", "laissez-faire or a = 0",
         all_passed(report.axioms, {Homogeneity, EqualTreatment, Continuity, NoAdvantageousTransfer, Stability}),
         cls.label == Label::LaissezFaire || (is_ab && cls.a_shape == Shape::Zero)},
        {"core+nat+dummy", "b(t) = (1 - a(t)) t",
         all_passed(report.axioms, {Homogeneity, EqualTreatment, Continuity, NoAdvantageousTransfer, Dummy}),
         afam_shape},
        {"core+nat", "AB family",
         all_passed(report.axioms, {Homogeneity, EqualTreatment, Continuity, NoAdvantageousTransfer}), is_ab},
    };
    report.consistent = std::all_of(report.implications.begin(), report.implications.end(),
                                    [](const Implication& i) { return i.consistent(); });
    return report;
}

}  // namespace redist

#include "redist/axioms.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "redist/error.hpp"

namespace redist {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

constexpr std::array kAllAxioms{
    Axiom::Homogeneity,       Axiom::EqualTreatment, Axiom::Continuity,
    Axiom::NoAdvantageousTransfer, Axiom::Stability, Axiom::Dummy,
    Axiom::IncomeAdditivity,  Axiom::DualIncomeAdditivity,
};
constexpr std::array kCoreAxioms{Axiom::Homogeneity, Axiom::EqualTreatment, Axiom::Continuity};

constexpr int kContinuityHalvings = 32;
constexpr int kMaxShrinkHalvings = 40;

// Both additivity axioms draw the same instances so that a rule and its dual
// can be compared on matched samples.
std::uint64_t sampling_stream(Axiom axiom) {
    return axiom == Axiom::DualIncomeAdditivity ? static_cast<std::uint64_t>(Axiom::IncomeAdditivity)
                                                : static_cast<std::uint64_t>(axiom);
}

std::size_t min_agents(Axiom axiom, const SampleConfig& cfg) {
    switch (axiom) {
        case Axiom::EqualTreatment:
        case Axiom::Dummy: return 2;
        // A proper coalition of two needs a third agent outside it.
        case Axiom::NoAdvantageousTransfer: return cfg.max_agents >= 3 ? 3 : 2;
        default: return 1;
    }
}

std::vector<double> scaled(std::span<const double> v, double factor) {
    std::vector<double> out(v.begin(), v.end());
    for (auto& x : out) x *= factor;
    return out;
}

std::vector<double> plus(std::span<const double> a, std::span<const double> b) {
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

std::vector<double> to_vector(std::span<const double> v) { return {v.begin(), v.end()}; }

Problem rebuild(const Problem& p, std::vector<double> incomes, std::vector<double> needs) {
    return Problem::make({p.ids().begin(), p.ids().end()}, std::move(incomes), std::move(needs));
}

double group_sum(const Allocation& x, std::span<const std::size_t> group) {
    double total = 0.0;
    for (auto i : group) total += x[i];
    return total;
}

std::vector<std::size_t> random_subset(Rng& rng, std::size_t n, std::size_t size) {
    std::vector<std::size_t> pool(n);
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    for (std::size_t k = 0; k < size; ++k) std::swap(pool[k], pool[k + rng.index(n - k)]);
    pool.resize(size);
    std::sort(pool.begin(), pool.end());
    return pool;
}

template <class F>
auto retry_valid(F&& draw) {
    // Some draws (e.g. zeroing an agent's need) can leave Z too small; redraw.
    for (int attempt = 0;; ++attempt) {
        try {
            return draw();
        } catch (const Error& e) {
            if (e.code() != ErrorCode::ZeroTotalNeed || attempt > 1000) throw;
        }
    }
}

AxiomCase sample_nat(Rng& rng, const SampleConfig& cfg) {
    return retry_valid([&]() -> AxiomCase {
        auto p = sample_problem(rng, cfg, min_agents(Axiom::NoAdvantageousTransfer, cfg));
        const std::size_t n = p.size();
        const std::size_t size = n >= 3 ? 2 + rng.index(n - 2) : n;  // 2..n-1
        auto group = random_subset(rng, n, size);

        auto y = to_vector(p.incomes());
        auto z = to_vector(p.needs());
        // Incomes: zero-sum deviations inside the group.
        const double spread = (cfg.income_hi - cfg.income_lo) / 2.0;
        std::vector<double> delta(group.size());
        for (auto& d : delta) d = rng.uniform(-spread, spread);
        const double mean = std::accumulate(delta.begin(), delta.end(), 0.0) / static_cast<double>(delta.size());
        // Needs: a fresh non-negative split of the group's aggregate need.
        double group_need = 0.0;
        for (auto i : group) group_need += z[i];
        std::vector<double> weights(group.size());
        double weight_total = 0.0;
        for (auto& w : weights) {
            w = rng.chance(cfg.zero_need_probability) ? 0.0 : rng.uniform(0.0, 1.0);
            weight_total += w;
        }
        if (weight_total == 0.0) {
            std::fill(weights.begin(), weights.end(), 1.0);
            weight_total = static_cast<double>(weights.size());
        }
        for (std::size_t k = 0; k < group.size(); ++k) {
            y[group[k]] += delta[k] - mean;
            z[group[k]] = group_need * weights[k] / weight_total;
        }
        auto reallocated = rebuild(p, std::move(y), std::move(z));
        return cases::NoAdvantageousTransfer{std::move(p), std::move(reallocated), std::move(group)};
    });
}

AxiomCase sample_continuity(Rng& rng, const SampleConfig& cfg) {
    auto p = sample_problem(rng, cfg);
    const double step = cfg.perturbation_scale * p.scale();
    std::vector<double> dy(p.size()), dz(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        dy[i] = rng.uniform(-1.0, 1.0);
        dz[i] = rng.uniform(-1.0, 1.0);
        // Keep every probe inside z >= 0.
        if (p.needs()[i] < step) dz[i] = std::abs(dz[i]);
    }
    return cases::Continuity{std::move(p), std::move(dy), std::move(dz), step, kContinuityHalvings};
}

// --- shrinking --------------------------------------------------------------

std::vector<double> erase_at(std::vector<double> v, std::size_t k) {
    v.erase(v.begin() + static_cast<std::ptrdiff_t>(k));
    return v;
}

std::size_t shift_down(std::size_t index, std::size_t removed) {
    return index > removed ? index - 1 : index;
}

std::optional<AxiomCase> without_agent(const AxiomCase& instance, std::size_t k) {
    try {
        return std::visit(
            overloaded{
                [&](const cases::Homogeneity& c) -> std::optional<AxiomCase> {
                    if (c.problem.size() < 2) return std::nullopt;
                    return cases::Homogeneity{c.problem.without_agent(k), c.factor};
                },
                [&](const cases::EqualTreatment& c) -> std::optional<AxiomCase> {
                    if (c.problem.size() < 3 || k == c.first || k == c.second) return std::nullopt;
                    return cases::EqualTreatment{c.problem.without_agent(k), shift_down(c.first, k),
                                                 shift_down(c.second, k)};
                },
                [&](const cases::Continuity& c) -> std::optional<AxiomCase> {
                    if (c.problem.size() < 2) return std::nullopt;
                    return cases::Continuity{c.problem.without_agent(k), erase_at(c.income_direction, k),
                                             erase_at(c.need_direction, k), c.step, c.halvings};
                },
                [&](const cases::NoAdvantageousTransfer& c) -> std::optional<AxiomCase> {
                    if (std::find(c.group.begin(), c.group.end(), k) != c.group.end())
                        return std::nullopt;
                    auto group = c.group;
                    for (auto& i : group) i = shift_down(i, k);
                    return cases::NoAdvantageousTransfer{c.problem.without_agent(k),
                                                         c.reallocated.without_agent(k), std::move(group)};
                },
                [&](const cases::Stability& c) -> std::optional<AxiomCase> {
                    if (c.problem.size() < 2) return std::nullopt;
                    return cases::Stability{c.problem.without_agent(k)};
                },
                [&](const cases::Dummy& c) -> std::optional<AxiomCase> {
                    if (c.problem.size() < 3 || k == c.agent) return std::nullopt;
                    return cases::Dummy{c.problem.without_agent(k), shift_down(c.agent, k)};
                },
                [&](const cases::Additivity& c) -> std::optional<AxiomCase> {
                    if (c.problem.size() < 2) return std::nullopt;
                    return cases::Additivity{c.problem.without_agent(k), erase_at(c.extra_income, k)};
                },
            },
            instance);
    } catch (const Error&) {
        return std::nullopt;
    }
}

/// The same witness with its perturbation multiplied by `factor`; nullopt for
/// axioms without a perturbation to shrink.
std::optional<AxiomCase> damped(const AxiomCase& instance, double factor) {
    try {
        return std::visit(
            overloaded{
                [&](const cases::Homogeneity& c) -> std::optional<AxiomCase> {
                    return cases::Homogeneity{c.problem, 1.0 + factor * (c.factor - 1.0)};
                },
                [&](const cases::Continuity& c) -> std::optional<AxiomCase> {
                    auto next = c;
                    next.step *= factor;
                    return next;
                },
                [&](const cases::NoAdvantageousTransfer& c) -> std::optional<AxiomCase> {
                    auto y = to_vector(c.problem.incomes());
                    auto z = to_vector(c.problem.needs());
                    for (auto i : c.group) {
                        y[i] += factor * (c.reallocated.incomes()[i] - y[i]);
                        z[i] += factor * (c.reallocated.needs()[i] - z[i]);
                    }
                    return cases::NoAdvantageousTransfer{c.problem, rebuild(c.problem, y, z), c.group};
                },
                [&](const cases::Additivity& c) -> std::optional<AxiomCase> {
                    return cases::Additivity{c.problem, scaled(c.extra_income, factor)};
                },
                [](const auto&) -> std::optional<AxiomCase> { return std::nullopt; },
            },
            instance);
    } catch (const Error&) {
        return std::nullopt;
    }
}

Counterexample shrink(Axiom axiom, const Rule& rule, AxiomCase instance, AxiomOutcome outcome,
                      double tol) {
    for (bool progress = true; progress;) {
        progress = false;
        const std::size_t n = std::visit([](const auto& c) { return c.problem.size(); }, instance);
        for (std::size_t k = 0; k < n && !progress; ++k) {
            auto smaller = without_agent(instance, k);
            if (!smaller) continue;
            auto result = assess(axiom, rule, *smaller);
            if (result.deviation > tol) {
                instance = std::move(*smaller);
                outcome = std::move(result);
                progress = true;
            }
        }
    }
    for (int k = 0; k < kMaxShrinkHalvings; ++k) {
        auto candidate = damped(instance, 0.5);
        if (!candidate) break;
        auto result = assess(axiom, rule, *candidate);
        if (!(result.deviation > tol)) break;
        instance = std::move(*candidate);
        outcome = std::move(result);
    }
    return {std::move(instance), std::move(outcome)};
}

}  // namespace

std::string_view to_string(Axiom axiom) noexcept {
    switch (axiom) {
        case Axiom::Homogeneity: return "homogeneity";
        case Axiom::EqualTreatment: return "equal_treatment";
        case Axiom::Continuity: return "continuity";
        case Axiom::NoAdvantageousTransfer: return "nat";
        case Axiom::Stability: return "stability";
        case Axiom::Dummy: return "dummy";
        case Axiom::IncomeAdditivity: return "income_additivity";
        case Axiom::DualIncomeAdditivity: return "dual_income_additivity";
    }
    return "unknown";
}

Axiom parse_axiom(std::string_view name) {
    for (auto axiom : kAllAxioms)
        if (to_string(axiom) == name) return axiom;
    throw Error(ErrorCode::UnknownAxiom, "'" + std::string(name) + "'");
}

std::vector<Axiom> parse_axiom_list(std::string_view text) {
    std::vector<Axiom> out;
    auto add = [&](Axiom a) {
        if (std::find(out.begin(), out.end(), a) == out.end()) out.push_back(a);
    };
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find(',', start);
        if (end == std::string_view::npos) end = text.size();
        auto item = text.substr(start, end - start);
        while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
        while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
        if (item == "all") {
            for (auto a : kAllAxioms) add(a);
        } else if (item == "core") {
            for (auto a : kCoreAxioms) add(a);
        } else {
            add(parse_axiom(item));
        }
        start = end + 1;
    }
    return out;
}

std::span<const Axiom> all_axioms() noexcept { return kAllAxioms; }
std::span<const Axiom> core_axioms() noexcept { return kCoreAxioms; }

AxiomCase sample_case(Axiom axiom, Rng& rng, const SampleConfig& cfg) {
    switch (axiom) {
        case Axiom::Homogeneity: {
            auto p = sample_problem(rng, cfg);
            const double factor = 10.0 * (1.0 - rng.uniform(0.0, 1.0));  // (0, 10]
            return cases::Homogeneity{std::move(p), factor};
        }
        case Axiom::EqualTreatment:
            return retry_valid([&]() -> AxiomCase {
                auto p = sample_problem(rng, cfg, 2);
                const std::size_t first = rng.index(p.size());
                std::size_t second = rng.index(p.size() - 1);
                if (second >= first) ++second;
                auto y = to_vector(p.incomes());
                auto z = to_vector(p.needs());
                y[second] = y[first];
                z[second] = z[first];
                return cases::EqualTreatment{rebuild(p, std::move(y), std::move(z)), first, second};
            });
        case Axiom::Continuity: return sample_continuity(rng, cfg);
        case Axiom::NoAdvantageousTransfer: return sample_nat(rng, cfg);
        case Axiom::Stability: return cases::Stability{sample_problem(rng, cfg)};
        case Axiom::Dummy:
            return retry_valid([&]() -> AxiomCase {
                auto p = sample_problem(rng, cfg, 2);
                const std::size_t agent = rng.index(p.size());
                auto y = to_vector(p.incomes());
                auto z = to_vector(p.needs());
                y[agent] = 0.0;
                z[agent] = 0.0;
                return cases::Dummy{rebuild(p, std::move(y), std::move(z)), agent};
            });
        case Axiom::IncomeAdditivity:
        case Axiom::DualIncomeAdditivity: {
            auto p = sample_problem(rng, cfg);
            auto extra = sample_incomes(rng, cfg, p.size());
            return cases::Additivity{std::move(p), std::move(extra)};
        }
    }
    throw Error(ErrorCode::UnknownAxiom, "unhandled axiom");
}

AxiomOutcome assess(Axiom axiom, const Rule& rule, const AxiomCase& instance) {
    auto mismatch = [] {
        return Error(ErrorCode::InvalidArgument, "instance does not belong to this axiom");
    };
    AxiomOutcome out;
    double unit = 1.0;
    switch (axiom) {
        case Axiom::Homogeneity: {
            const auto* c = std::get_if<cases::Homogeneity>(&instance);
            if (!c) throw mismatch();
            const auto grown = rebuild(c->problem, scaled(c->problem.incomes(), c->factor),
                                       scaled(c->problem.needs(), c->factor));
            out.expected = scaled(evaluate(rule, c->problem).values(), c->factor);
            out.observed = evaluate(rule, grown).vector();
            unit = std::max(c->problem.scale(), grown.scale());
            break;
        }
        case Axiom::EqualTreatment: {
            const auto* c = std::get_if<cases::EqualTreatment>(&instance);
            if (!c) throw mismatch();
            const auto x = evaluate(rule, c->problem);
            out.expected = {x[c->first]};
            out.observed = {x[c->second]};
            unit = c->problem.scale();
            break;
        }
        case Axiom::Continuity: {
            const auto* c = std::get_if<cases::Continuity>(&instance);
            if (!c) throw mismatch();
            unit = c->problem.scale();
            const auto base = evaluate(rule, c->problem);
            double previous = 0.0;
            double worst_increase = 0.0;
            std::vector<double> last;
            for (int k = 0; k <= c->halvings; ++k) {
                const double delta = std::ldexp(c->step, -k);
                auto y = plus(c->problem.incomes(), scaled(c->income_direction, delta));
                auto z = plus(c->problem.needs(), scaled(c->need_direction, delta));
                for (auto& v : z) v = std::max(v, 0.0);
                last = evaluate(rule, rebuild(c->problem, std::move(y), std::move(z))).vector();
                const double gap = max_abs_difference(last, base.values()) / unit;
                if (k > 0) worst_increase = std::max(worst_increase, gap - previous);
                previous = gap;
            }
            out.expected = base.vector();
            out.observed = std::move(last);
            // The sequence must shrink monotonically and end below tolerance.
            out.deviation = std::max(previous, worst_increase);
            return out;
        }
        case Axiom::NoAdvantageousTransfer: {
            const auto* c = std::get_if<cases::NoAdvantageousTransfer>(&instance);
            if (!c) throw mismatch();
            out.expected = {group_sum(evaluate(rule, c->problem), c->group)};
            out.observed = {group_sum(evaluate(rule, c->reallocated), c->group)};
            unit = std::max(c->problem.scale(), c->reallocated.scale());
            break;
        }
        case Axiom::Stability: {
            const auto* c = std::get_if<cases::Stability>(&instance);
            if (!c) throw mismatch();
            const auto once = evaluate(rule, c->problem);
            out.expected = once.vector();
            out.observed = evaluate(rule, c->problem.with_incomes(once.vector())).vector();
            unit = c->problem.scale();
            break;
        }
        case Axiom::Dummy: {
            const auto* c = std::get_if<cases::Dummy>(&instance);
            if (!c) throw mismatch();
            out.expected = {0.0};
            out.observed = {evaluate(rule, c->problem)[c->agent]};
            unit = c->problem.scale();
            break;
        }
        case Axiom::IncomeAdditivity:
        case Axiom::DualIncomeAdditivity: {
            const auto* c = std::get_if<cases::Additivity>(&instance);
            if (!c) throw mismatch();
            const auto& p = c->problem;
            const auto z = p.needs();
            const auto combined = p.with_incomes(plus(p.incomes(), c->extra_income));
            unit = std::max(p.scale(), combined.scale());
            if (axiom == Axiom::IncomeAdditivity) {
                // R(y + y', z) = R(y, z) + R(y', z)
                const auto extra = p.with_incomes(c->extra_income);
                out.expected = plus(evaluate(rule, p).values(), evaluate(rule, extra).values());
                out.observed = evaluate(rule, combined).vector();
                unit = std::max(unit, extra.scale());
            } else {
                // z + R(y + y', z) = R(y, z) + R(z + y', z)
                const auto shifted = p.with_incomes(plus(z, c->extra_income));
                out.expected = plus(evaluate(rule, p).values(), evaluate(rule, shifted).values());
                out.observed = plus(z, evaluate(rule, combined).values());
                unit = std::max(unit, shifted.scale());
            }
            break;
        }
    }
    out.deviation = max_abs_difference(out.expected, out.observed) / unit;
    return out;
}

AxiomReport check_axiom(Axiom axiom, const Rule& rule, const SampleConfig& cfg, double tol) {
    if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
    cfg.validate();
    AxiomReport report{axiom, rule, true, 0, tol, std::nullopt};
    const auto stream = sampling_stream(axiom);
    for (std::size_t k = 0; k < cfg.trials; ++k) {
        Rng rng(cfg.seed, stream, k);
        auto instance = sample_case(axiom, rng, cfg);
        auto outcome = assess(axiom, rule, instance);
        ++report.trials_run;
        if (!(outcome.deviation <= tol)) {
            report.passed = false;
            report.counterexample = shrink(axiom, rule, std::move(instance), std::move(outcome), tol);
            break;
        }
    }
    return report;
}

std::vector<AxiomReport> axiom_suite(const Rule& rule, std::span<const Axiom> axioms,
                                     const SampleConfig& cfg, double tol) {
    std::vector<AxiomReport> reports;
    reports.reserve(axioms.size());
    for (auto axiom : axioms) {
        auto sub = cfg;
        sub.seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(axiom));
        reports.push_back(check_axiom(axiom, rule, sub, tol));
    }
    return reports;
}

}  // namespace redist

#include "redist/duality.hpp"

#include "redist/error.hpp"

namespace redist {

namespace {
constexpr std::uint64_t kSelfDualStream = 0x5e1fd0a1;
}

Allocation dual_evaluate(const Rule& rule, const Problem& problem) {
    const auto y = problem.incomes();
    const auto z = problem.needs();
    std::vector<double> gap(problem.size());
    for (std::size_t i = 0; i < gap.size(); ++i) gap[i] = z[i] - y[i];
    const auto reflected = evaluate(rule, problem.with_incomes(std::move(gap)));
    std::vector<double> x(problem.size());
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = z[i] - reflected[i];
    return Allocation(std::move(x));
}

std::pair<ScalarFn, ScalarFn> dual_ab(const ScalarFn& a, const ScalarFn& b, bool catalog_only) {
    if (catalog_only && (!a.is_catalog() || !b.is_catalog()))
        throw Error(ErrorCode::NonRepresentable,
                    "dual of a custom coefficient has no catalog form");
    auto a_reflected = reflect(a);
    const std::pair<double, ScalarFn> terms[] = {{-1.0, a_reflected}, {-1.0, reflect(b)}};
    return {std::move(a_reflected), linear_combination(terms, 1.0)};
}

DualReport check_self_dual(const Rule& rule, const SampleConfig& cfg, double tol) {
    if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
    cfg.validate();
    DualReport report{rule, true, 0.0, tol, 0, std::nullopt};
    for (std::size_t k = 0; k < cfg.trials; ++k) {
        Rng rng(cfg.seed, kSelfDualStream, k);
        const auto p = sample_problem(rng, cfg);
        const double d =
            max_abs_difference(evaluate(rule, p).values(), dual_evaluate(rule, p).values()) /
            p.scale();
        ++report.trials_run;
        if (!(d <= report.max_deviation)) report.max_deviation = d;
        if (!(d <= tol)) {
            report.is_self_dual = false;
            report.witness = p;
            break;
        }
    }
    return report;
}

}  // namespace redist

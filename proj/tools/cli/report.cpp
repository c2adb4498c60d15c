#include "report.hpp"

#include <algorithm>
#include <limits>

namespace redist::cli {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

ordered_json vec(std::span<const double> v) { return ordered_json(std::vector<double>(v.begin(), v.end())); }

}  // namespace

ordered_json problem_json(const Problem& p) {
    ordered_json j;
    j["ids"] = std::vector<std::string>(p.ids().begin(), p.ids().end());
    j["incomes"] = vec(p.incomes());
    j["needs"] = vec(p.needs());
    j["total_income"] = p.total_income();
    j["total_need"] = p.total_need();
    return j;
}

ordered_json allocation_rows(const Problem& p, const Allocation& x) {
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < p.size(); ++i) {
        ordered_json row;
        row["id"] = p.ids()[i];
        row["income"] = p.incomes()[i];
        row["need"] = p.needs()[i];
        row["allocation"] = x[i];
        row["coverage"] = p.needs()[i] > 0.0 ? ordered_json(x[i] / p.needs()[i]) : ordered_json(nullptr);
        rows.push_back(std::move(row));
    }
    return rows;
}

ordered_json allocation_summary(const Problem& p, const Allocation& x) {
    const auto values = x.values();
    double total = 0.0;
    for (double v : values) total += v;
    const auto verdict = check_allocation(p, values);
    ordered_json j;
    j["total"] = total;
    j["mean"] = total / static_cast<double>(values.size());
    j["min"] = *std::min_element(values.begin(), values.end());
    j["max"] = *std::max_element(values.begin(), values.end());
    j["balance_residual"] = verdict.residual;
    return j;
}

ordered_json case_json(const AxiomCase& instance) {
    return std::visit(
        overloaded{
            [](const cases::Homogeneity& c) {
                return ordered_json{{"problem", problem_json(c.problem)}, {"factor", c.factor}};
            },
            [](const cases::EqualTreatment& c) {
                return ordered_json{{"problem", problem_json(c.problem)},
                                    {"twins", {c.problem.ids()[c.first], c.problem.ids()[c.second]}}};
            },
            [](const cases::Continuity& c) {
                return ordered_json{{"problem", problem_json(c.problem)},
                                    {"income_direction", c.income_direction},
                                    {"need_direction", c.need_direction},
                                    {"step", c.step},
                                    {"halvings", c.halvings}};
            },
            [](const cases::NoAdvantageousTransfer& c) {
                std::vector<std::string> group;
                for (auto i : c.group) group.push_back(c.problem.ids()[i]);
                return ordered_json{{"problem", problem_json(c.problem)},
                                    {"reallocated", problem_json(c.reallocated)},
                                    {"group", group}};
            },
            [](const cases::Stability& c) { return ordered_json{{"problem", problem_json(c.problem)}}; },
            [](const cases::Dummy& c) {
                return ordered_json{{"problem", problem_json(c.problem)}, {"agent", c.problem.ids()[c.agent]}};
            },
            [](const cases::Additivity& c) {
                return ordered_json{{"problem", problem_json(c.problem)}, {"extra_income", c.extra_income}};
            },
        },
        instance);
}

ordered_json axiom_report_json(const AxiomReport& report) {
    ordered_json j;
    j["axiom"] = std::string(to_string(report.axiom));
    j["passed"] = report.passed;
    j["trials_run"] = report.trials_run;
    j["tolerance"] = report.tolerance;
    if (report.counterexample) {
        const auto& ce = *report.counterexample;
        j["counterexample"] = {{"instance", case_json(ce.instance)},
                               {"expected", ce.outcome.expected},
                               {"observed", ce.outcome.observed},
                               {"deviation", ce.outcome.deviation}};
    } else {
        j["counterexample"] = nullptr;
    }
    return j;
}

ordered_json dual_report_json(const DualReport& report) {
    ordered_json j;
    j["is_self_dual"] = report.is_self_dual;
    j["max_deviation"] = report.max_deviation;
    j["tolerance"] = report.tolerance;
    j["trials_run"] = report.trials_run;
    j["witness"] = report.witness ? problem_json(*report.witness) : ordered_json(nullptr);
    return j;
}

ordered_json profile_json(const ABProfile& profile) {
    return {{"grid", profile.grid}, {"a", profile.a_values}, {"b", profile.b_values}};
}

ordered_json classification_json(const Classification& c) {
    ordered_json j;
    j["label"] = std::string(to_string(c.label));
    j["a_shape"] = std::string(to_string(c.a_shape));
    j["b_shape"] = std::string(to_string(c.b_shape));
    j["fitted_a"] = c.fitted_a ? ordered_json(c.fitted_a->to_string()) : ordered_json(nullptr);
    j["fitted_b"] = c.fitted_b ? ordered_json(c.fitted_b->to_string()) : ordered_json(nullptr);
    j["residual"] = c.residual;
    j["fitted_residual"] = c.fitted_residual;
    j["problems_checked"] = c.problems_checked;
    j["profile"] = profile_json(c.profile);
    return j;
}

}  // namespace redist::cli

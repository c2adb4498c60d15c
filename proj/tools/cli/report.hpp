#pragma once

#include <json.hpp>

#include "redist/analysis.hpp"
#include "redist/axioms.hpp"
#include "redist/duality.hpp"
#include "redist/problem.hpp"
#include "redist/rule.hpp"

namespace redist::cli {

using nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1";

ordered_json problem_json(const Problem& p);
/// One row per agent: id, income, need, allocation, coverage (x_i / z_i, null when z_i = 0).
ordered_json allocation_rows(const Problem& p, const Allocation& x);
/// total, mean, min, max of the allocation plus the balance residual.
ordered_json allocation_summary(const Problem& p, const Allocation& x);
ordered_json case_json(const AxiomCase& instance);
ordered_json axiom_report_json(const AxiomReport& report);
ordered_json dual_report_json(const DualReport& report);
ordered_json profile_json(const ABProfile& profile);
ordered_json classification_json(const Classification& c);

}  // namespace redist::cli

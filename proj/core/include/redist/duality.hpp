#pragma once

#include <cstddef>
#include <optional>
#include <utility>

#include "redist/problem.hpp"
#include "redist/rule.hpp"
#include "redist/sampling.hpp"
#include "redist/scalar_fn.hpp"

namespace redist {

/// R^d(y, z) = z - R(z - y, z). The reflected problem keeps the needs, so it
/// is always valid (its incomes may be negative).
Allocation dual_evaluate(const Rule& rule, const Problem& problem);

/// Coefficients of the dual of an AB rule:
///   A_d(t) = A(1 - t),  B_d(t) = 1 - A(1 - t) - B(1 - t).
/// With catalog_only set, custom functions are rejected with NonRepresentable
/// instead of being wrapped in a closure.
std::pair<ScalarFn, ScalarFn> dual_ab(const ScalarFn& a, const ScalarFn& b,
                                      bool catalog_only = false);

struct DualReport {
    Rule rule;
    bool is_self_dual = true;
    /// Worst |R(p) - R^d(p)| in units of max(1, |Y|, Z).
    double max_deviation = 0.0;
    double tolerance = 0.0;
    std::size_t trials_run = 0;
    std::optional<Problem> witness;
};

DualReport check_self_dual(const Rule& rule, const SampleConfig& cfg, double tol);

}  // namespace redist

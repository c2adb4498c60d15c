#pragma once

#include <string_view>
#include <vector>

#include "redist/rule.hpp"
#include "redist/scalar_fn.hpp"

namespace redist {

// Rule-spec grammar:
//
//   rule := lf | full | prop | nafr
//         | ab:A=<fn>,B=<fn> | afam:A=<fn> | bfam:B=<fn>
//         | lin:<r>,<r> | lindual:<r>,<r>
//         | convex(<rule>;<rule>;<weight>) | dual(<rule>)
//   fn   := const:<r> | id | scale:<r> | affine:<slope>,<intercept>
//         | poly:<c0>[,<c1>...]            (ascending powers of t)
//
// Failures throw Error(ParseError) naming the offending token and offset.

Rule parse_rule(std::string_view text);
ScalarFn parse_scalar_fn(std::string_view text);

/// Comma-separated rules, e.g. "lf,prop,lin:0.3,0.2".
std::vector<Rule> parse_rule_list(std::string_view text);

}  // namespace redist

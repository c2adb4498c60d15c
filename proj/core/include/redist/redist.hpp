#pragma once

#include "redist/analysis.hpp"
#include "redist/axioms.hpp"
#include "redist/duality.hpp"
#include "redist/error.hpp"
#include "redist/problem.hpp"
#include "redist/rule.hpp"
#include "redist/rule_parser.hpp"
#include "redist/sampling.hpp"
#include "redist/scalar_fn.hpp"

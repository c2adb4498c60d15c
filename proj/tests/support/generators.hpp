#pragma once

// Hand-rolled generators for property tests, driven by the library's
// deterministic Rng so failures reproduce from (seed, index).

#include <vector>

#include "redist/rule.hpp"
#include "redist/sampling.hpp"
#include "redist/scalar_fn.hpp"

namespace redist::gen {

/// Coefficients on a 1/4 lattice keep rule values tame and exactly printable.
inline double lattice(Rng& rng, double lo, double hi) {
    return std::round(rng.uniform(lo, hi) * 4.0) / 4.0;
}

inline ScalarFn catalog_fn(Rng& rng) {
    switch (rng.index(5)) {
        case 0: return ScalarFn::constant(lattice(rng, -2, 2));
        case 1: return ScalarFn::identity();
        case 2: return ScalarFn::scale(lattice(rng, -2, 2));
        case 3: return ScalarFn::affine(lattice(rng, -2, 2), lattice(rng, -2, 2));
        default: {
            std::vector<double> c(1 + rng.index(3));
            for (auto& v : c) v = lattice(rng, -1, 1);
            return ScalarFn::polynomial(c);
        }
    }
}

/// Random rule tree over the full catalog (no custom nodes).
inline Rule catalog_rule(Rng& rng, int depth = 2) {
    const std::size_t leaves = 9;
    const std::size_t choice = rng.index(depth > 0 ? leaves + 2 : leaves);
    switch (choice) {
        case 0: return Rule::laissez_faire();
        case 1: return Rule::full();
        case 2: return Rule::proportional();
        case 3: return Rule::need_adjusted_full();
        case 4: return Rule::ab(catalog_fn(rng), catalog_fn(rng));
        case 5: return Rule::a_family(catalog_fn(rng));
        case 6: return Rule::b_family(catalog_fn(rng));
        case 7: return Rule::linear(lattice(rng, -2, 2), lattice(rng, -2, 2));
        case 8: return Rule::linear_dual(lattice(rng, -2, 2), lattice(rng, -2, 2));
        case 9: {
            auto first = catalog_rule(rng, depth - 1);
            auto second = catalog_rule(rng, depth - 1);
            return Rule::convex(first, second, lattice(rng, 0, 1));
        }
        default: return Rule::dual(catalog_rule(rng, depth - 1));
    }
}

}  // namespace redist::gen

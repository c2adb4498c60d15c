#pragma once

// Reference computations used only by tests. They are written from the rule
// definitions directly (explicit sums, no shared helpers with the library) so
// they can serve as independent oracles.

#include <cmath>
#include <functional>
#include <numeric>
#include <vector>

#include "redist/problem.hpp"
#include "redist/rule.hpp"

namespace redist::oracle {

inline double sum(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

inline std::vector<double> incomes(const Problem& p) { return {p.incomes().begin(), p.incomes().end()}; }
inline std::vector<double> needs(const Problem& p) { return {p.needs().begin(), p.needs().end()}; }

inline std::vector<double> laissez_faire(const Problem& p) { return incomes(p); }

inline std::vector<double> full(const Problem& p) {
    const auto y = incomes(p);
    return std::vector<double>(y.size(), sum(y) / static_cast<double>(y.size()));
}

inline std::vector<double> proportional(const Problem& p) {
    const auto y = incomes(p), z = needs(p);
    std::vector<double> x;
    for (double zi : z) x.push_back(sum(y) * zi / sum(z));
    return x;
}

inline std::vector<double> need_adjusted_full(const Problem& p) {
    const auto y = incomes(p), z = needs(p);
    const double n = static_cast<double>(y.size());
    std::vector<double> x;
    for (double zi : z) x.push_back(zi + (sum(y) - sum(z)) / n);
    return x;
}

inline std::vector<double> ab(const Problem& p, const std::function<double(double)>& A,
                              const std::function<double(double)>& B) {
    const auto y = incomes(p), z = needs(p);
    const double n = static_cast<double>(y.size());
    const double Y = sum(y), Z = sum(z), t = Y / Z;
    std::vector<double> x;
    for (std::size_t i = 0; i < y.size(); ++i)
        x.push_back(Y / n + (y[i] - Y / n) * A(t) + (z[i] - Z / n) * B(t));
    return x;
}

inline std::vector<double> a_family(const Problem& p, const std::function<double(double)>& A) {
    const auto y = incomes(p), z = needs(p);
    const double t = sum(y) / sum(z);
    std::vector<double> x;
    for (std::size_t i = 0; i < y.size(); ++i) x.push_back(A(t) * y[i] + (1 - A(t)) * t * z[i]);
    return x;
}

inline std::vector<double> linear(const Problem& p, double a1, double a2) {
    const auto lf = laissez_faire(p), pr = proportional(p), fu = full(p);
    std::vector<double> x;
    for (std::size_t i = 0; i < lf.size(); ++i) x.push_back(a1 * lf[i] + a2 * pr[i] + (1 - a1 - a2) * fu[i]);
    return x;
}

inline std::vector<double> linear_dual(const Problem& p, double a1, double a2) {
    const auto lf = laissez_faire(p), pr = proportional(p), nf = need_adjusted_full(p);
    std::vector<double> x;
    for (std::size_t i = 0; i < lf.size(); ++i) x.push_back(a1 * lf[i] + a2 * pr[i] + (1 - a1 - a2) * nf[i]);
    return x;
}

/// Test-only black box: Y split in proportion to squared needs.
inline Rule squared_need_rule() {
    return Rule::custom("z-squared", [](const Problem& p) {
        double denom = 0.0;
        for (double z : p.needs()) denom += z * z;
        std::vector<double> x;
        for (double z : p.needs()) x.push_back(p.total_income() * z * z / denom);
        return x;
    });
}

struct Coefficients {
    double a, b;
};

/// Solves the AB form by Cramer's rule on the first two agents:
///   R_i - Y/n = (y_i - Y/n) a + (z_i - Z/n) b,  i = 0, 1.
/// With n = 2 the system is singular, so callers use n >= 3.
/// Independent of the flat-probe construction in the library.
inline Coefficients solve_ab_two_agents(const std::vector<double>& x, const Problem& p) {
    const auto y = incomes(p), z = needs(p);
    const double n = static_cast<double>(y.size());
    const double my = sum(y) / n, mz = sum(z) / n;
    const double a11 = y[0] - my, a12 = z[0] - mz, r1 = x[0] - my;
    const double a21 = y[1] - my, a22 = z[1] - mz, r2 = x[1] - my;
    const double det = a11 * a22 - a12 * a21;
    return {(r1 * a22 - a12 * r2) / det, (a11 * r2 - r1 * a21) / det};
}

}  // namespace redist::oracle

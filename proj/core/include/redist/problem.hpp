#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace redist {

struct Aggregates {
    double total_income = 0.0;  // Y
    double total_need = 0.0;    // Z
    std::size_t agents = 0;     // n
};

/// A redistribution problem with needs: one income (any sign) and one
/// non-negative need per agent, with positive aggregate need.
///
/// Instances are immutable once built; use make() or from_profiles() which
/// validate every domain assumption and throw redist::Error otherwise.
class Problem {
public:
    static Problem make(std::vector<std::string> ids, std::vector<double> incomes,
                        std::vector<double> needs);

    /// Agents are labelled "1".."n".
    static Problem from_profiles(std::vector<double> incomes, std::vector<double> needs);

    std::size_t size() const noexcept { return incomes_.size(); }
    std::span<const std::string> ids() const noexcept { return ids_; }
    std::span<const double> incomes() const noexcept { return incomes_; }
    std::span<const double> needs() const noexcept { return needs_; }

    double total_income() const noexcept { return total_income_; }
    double total_need() const noexcept { return total_need_; }
    Aggregates aggregates() const noexcept { return {total_income_, total_need_, size()}; }

    /// t = Y / Z, the ratio every rule family is parameterised by.
    double income_need_ratio() const noexcept { return total_income_ / total_need_; }

    /// max(1, |Y|, Z): the unit in which sampled deviations are compared.
    double scale() const noexcept;

    /// Same agents and needs, new incomes.
    Problem with_incomes(std::vector<double> incomes) const;
    Problem without_agent(std::size_t index) const;

    friend bool operator==(const Problem&, const Problem&) = default;

private:
    Problem() = default;

    std::vector<std::string> ids_;
    std::vector<double> incomes_;
    std::vector<double> needs_;
    double total_income_ = 0.0;
    double total_need_ = 0.0;
};

Aggregates aggregates(const Problem& problem) noexcept;

/// Balance tolerance 1e-9 * max(1, |Y|).
double balance_tolerance(double total_income) noexcept;

struct BalanceVerdict {
    bool balanced = false;
    double residual = 0.0;  // sum(x) - Y
    double tolerance = 0.0;
};

/// Checks that x is an allocation of the problem (sums to Y).
BalanceVerdict check_allocation(const Problem& problem, std::span<const double> x);

}  // namespace redist

#include "redist/problem.hpp"

#include <algorithm>
#include <cmath>

#include "redist/error.hpp"

namespace redist {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::EmptyAgentSet: return "EmptyAgentSet";
        case ErrorCode::NegativeNeed: return "NegativeNeed";
        case ErrorCode::ZeroTotalNeed: return "ZeroTotalNeed";
        case ErrorCode::NonFinite: return "NonFinite";
        case ErrorCode::LengthMismatch: return "LengthMismatch";
        case ErrorCode::InvalidWeight: return "InvalidWeight";
        case ErrorCode::Unbalanced: return "Unbalanced";
        case ErrorCode::UnknownAxiom: return "UnknownAxiom";
        case ErrorCode::DegenerateProbe: return "DegenerateProbe";
        case ErrorCode::NotApplicable: return "NotApplicable";
        case ErrorCode::NonRepresentable: return "NonRepresentable";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

namespace {

bool all_finite(std::span<const double> values) {
    return std::all_of(values.begin(), values.end(), [](double v) { return std::isfinite(v); });
}

double sum_in_order(std::span<const double> values) {
    double total = 0.0;
    for (double v : values) total += v;
    return total;
}

}  // namespace

Problem Problem::make(std::vector<std::string> ids, std::vector<double> incomes,
                      std::vector<double> needs) {
    if (ids.empty() && incomes.empty() && needs.empty())
        throw Error(ErrorCode::EmptyAgentSet, "a problem needs at least one agent");
    if (ids.size() != incomes.size() || incomes.size() != needs.size())
        throw Error(ErrorCode::LengthMismatch,
                    "got " + std::to_string(ids.size()) + " ids, " +
                        std::to_string(incomes.size()) + " incomes and " +
                        std::to_string(needs.size()) + " needs");
    if (!all_finite(incomes) || !all_finite(needs))
        throw Error(ErrorCode::NonFinite, "incomes and needs must be finite");
    for (std::size_t i = 0; i < needs.size(); ++i) {
        if (needs[i] < 0.0)
            throw Error(ErrorCode::NegativeNeed, "agent '" + ids[i] + "' has need " +
                                                     std::to_string(needs[i]));
    }

    Problem p;
    p.total_income_ = sum_in_order(incomes);
    p.total_need_ = sum_in_order(needs);
    if (!std::isfinite(p.total_income_) || !std::isfinite(p.total_need_))
        throw Error(ErrorCode::NonFinite, "aggregate income or need overflows");
    // Downstream formulas divide by Z.
    if (p.total_need_ <= balance_tolerance(p.total_income_))
        throw Error(ErrorCode::ZeroTotalNeed, "aggregate need must be positive");
    p.ids_ = std::move(ids);
    p.incomes_ = std::move(incomes);
    p.needs_ = std::move(needs);
    return p;
}

Problem Problem::from_profiles(std::vector<double> incomes, std::vector<double> needs) {
    std::vector<std::string> ids;
    ids.reserve(incomes.size());
    for (std::size_t i = 0; i < incomes.size(); ++i) ids.push_back(std::to_string(i + 1));
    return make(std::move(ids), std::move(incomes), std::move(needs));
}

double Problem::scale() const noexcept {
    return std::max({1.0, std::abs(total_income_), total_need_});
}

Problem Problem::with_incomes(std::vector<double> incomes) const {
    return make(ids_, std::move(incomes), needs_);
}

Problem Problem::without_agent(std::size_t index) const {
    if (index >= size()) throw Error(ErrorCode::InvalidArgument, "agent index out of range");
    auto ids = ids_;
    auto incomes = incomes_;
    auto needs = needs_;
    ids.erase(ids.begin() + static_cast<std::ptrdiff_t>(index));
    incomes.erase(incomes.begin() + static_cast<std::ptrdiff_t>(index));
    needs.erase(needs.begin() + static_cast<std::ptrdiff_t>(index));
    return make(std::move(ids), std::move(incomes), std::move(needs));
}

Aggregates aggregates(const Problem& problem) noexcept { return problem.aggregates(); }

double balance_tolerance(double total_income) noexcept {
    return 1e-9 * std::max(1.0, std::abs(total_income));
}

BalanceVerdict check_allocation(const Problem& problem, std::span<const double> x) {
    if (x.size() != problem.size())
        throw Error(ErrorCode::LengthMismatch, "allocation has " + std::to_string(x.size()) +
                                                   " entries for " +
                                                   std::to_string(problem.size()) + " agents");
    if (!all_finite(x)) throw Error(ErrorCode::NonFinite, "allocation must be finite");
    BalanceVerdict verdict;
    verdict.residual = sum_in_order(x) - problem.total_income();
    verdict.tolerance = balance_tolerance(problem.total_income());
    verdict.balanced = std::abs(verdict.residual) <= verdict.tolerance;
    return verdict;
}

}  // namespace redist

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "redist/error.hpp"
#include "redist/problem.hpp"
#include "redist/sampling.hpp"

using namespace redist;

namespace {

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "expected redist::Error";
    return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(MakeProblem, ComputesAggregates) {
    const auto p = Problem::make({"1", "2"}, {5, 1}, {1, 3});
    EXPECT_EQ(p.total_income(), 6.0);
    EXPECT_EQ(p.total_need(), 4.0);
    EXPECT_EQ(p.size(), 2u);
    EXPECT_EQ(p.ids()[0], "1");
    EXPECT_EQ(p.incomes()[1], 1.0);
}

TEST(MakeProblem, SingleAgentIsValid) {
    const auto p = Problem::make({"1"}, {0}, {1});
    EXPECT_EQ(p.size(), 1u);
    EXPECT_EQ(p.total_income(), 0.0);
}

TEST(MakeProblem, RejectsInvalidInput) {
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    constexpr double inf = std::numeric_limits<double>::infinity();
    EXPECT_EQ(code_of([] { Problem::make({"1", "2"}, {5, 1}, {0, 0}); }), ErrorCode::ZeroTotalNeed);
    EXPECT_EQ(code_of([] { Problem::make({}, {}, {}); }), ErrorCode::EmptyAgentSet);
    EXPECT_EQ(code_of([] { Problem::make({"1", "2"}, {5, 1}, {-1, 3}); }), ErrorCode::NegativeNeed);
    EXPECT_EQ(code_of([&] { Problem::make({"1", "2"}, {nan, 1}, {1, 3}); }), ErrorCode::NonFinite);
    EXPECT_EQ(code_of([&] { Problem::make({"1", "2"}, {5, 1}, {1, inf}); }), ErrorCode::NonFinite);
    EXPECT_EQ(code_of([] { Problem::make({"1", "2"}, {5}, {1, 3}); }), ErrorCode::LengthMismatch);
    EXPECT_EQ(code_of([] { Problem::make({"1"}, {5, 1}, {1, 3}); }), ErrorCode::LengthMismatch);
}

TEST(MakeProblem, RejectsTotalNeedWithinBalanceTolerance) {
    EXPECT_EQ(code_of([] { Problem::from_profiles({1, 1}, {1e-12, 0}); }), ErrorCode::ZeroTotalNeed);
}

TEST(MakeProblem, AcceptsNegativeIncomes) {
    const auto p = Problem::from_profiles({-3, -4}, {1, 0});
    EXPECT_EQ(p.total_income(), -7.0);
    EXPECT_DOUBLE_EQ(p.income_need_ratio(), -7.0);
}

TEST(Aggregates, MatchHandSums) {
    auto agg = aggregates(Problem::from_profiles({5, 1}, {1, 3}));
    EXPECT_EQ(agg.total_income, 6.0);
    EXPECT_EQ(agg.total_need, 4.0);
    EXPECT_EQ(agg.agents, 2u);

    agg = aggregates(Problem::from_profiles({-2, 2}, {1, 1}));
    EXPECT_EQ(agg.total_income, 0.0);
    EXPECT_EQ(agg.total_need, 2.0);

    agg = aggregates(Problem::from_profiles({3, 1}, {1, 3}));
    EXPECT_EQ(agg.total_income, 4.0);
    EXPECT_EQ(agg.total_need, 4.0);
}

TEST(CheckAllocation, Examples) {
    const auto p = Problem::from_profiles({5, 1}, {1, 3});
    const std::vector<double> prop{1.5, 4.5}, lf{5, 1}, off{5, 2};

    auto v = check_allocation(p, prop);
    EXPECT_TRUE(v.balanced);
    EXPECT_EQ(v.residual, 0.0);

    EXPECT_TRUE(check_allocation(p, lf).balanced);

    v = check_allocation(p, off);
    EXPECT_FALSE(v.balanced);
    EXPECT_EQ(v.residual, 1.0);
}

TEST(CheckAllocation, RejectsMalformedVectors) {
    const auto p = Problem::from_profiles({5, 1}, {1, 3});
    const std::vector<double> short_x{6}, bad{std::nan(""), 6};
    EXPECT_EQ(code_of([&] { check_allocation(p, short_x); }), ErrorCode::LengthMismatch);
    EXPECT_EQ(code_of([&] { check_allocation(p, bad); }), ErrorCode::NonFinite);
}

TEST(ProblemProperties, AggregatesAreInOrderSumsAndIncomesAreFeasible) {
    SampleConfig cfg;
    for (std::size_t k = 0; k < 500; ++k) {
        Rng rng(7, 0, k);
        const auto y = sample_incomes(rng, cfg, 1 + k % 6);
        const auto z = sample_needs(rng, cfg, y.size());
        const auto p = Problem::from_profiles(y, z);
        double Y = 0.0, Z = 0.0;
        for (double v : y) Y += v;
        for (double v : z) Z += v;
        ASSERT_EQ(p.total_income(), Y);
        ASSERT_EQ(p.total_need(), Z);
        ASSERT_TRUE(check_allocation(p, p.incomes()).balanced);
    }
}

TEST(ProblemProperties, DerivedProblemsLeaveTheOriginalUntouched) {
    const auto p = Problem::from_profiles({5, 1, 2}, {1, 3, 0});
    const auto copy = p;
    const auto q = p.with_incomes({0, 0, 8});
    const auto r = p.without_agent(1);
    EXPECT_EQ(p, copy);
    EXPECT_EQ(q.total_income(), 8.0);
    EXPECT_EQ(q.total_need(), 4.0);
    EXPECT_EQ(r.size(), 2u);
    EXPECT_EQ(r.ids()[1], "3");
}

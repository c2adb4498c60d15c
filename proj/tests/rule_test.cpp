#include <gtest/gtest.h>

#include <cmath>

#include "generators.hpp"
#include "oracles.hpp"
#include "redist/error.hpp"
#include "redist/rule.hpp"
#include "redist/sampling.hpp"

using namespace redist;

namespace {

const Problem kExample = Problem::from_profiles({5, 1}, {1, 3});

std::vector<Problem> random_problems(std::size_t count, std::uint64_t stream = 1) {
    SampleConfig cfg;
    cfg.seed = 2024;
    return sample_problems(cfg, stream, count);
}

void expect_values(const Allocation& x, std::vector<double> want) {
    ASSERT_EQ(x.size(), want.size());
    for (std::size_t i = 0; i < want.size(); ++i) EXPECT_NEAR(x[i], want[i], 1e-12) << "agent " << i;
}

const ScalarFn kZero = ScalarFn::constant(0.0);
const ScalarFn kOne = ScalarFn::constant(1.0);
const ScalarFn kId = ScalarFn::identity();

}  // namespace

TEST(Evaluate, ConcreteRulesOnWorkedExample) {
    expect_values(evaluate(Rule::laissez_faire(), kExample), {5, 1});
    expect_values(evaluate(Rule::proportional(), kExample), {1.5, 4.5});
    expect_values(evaluate(Rule::full(), kExample), {3, 3});
    expect_values(evaluate(Rule::need_adjusted_full(), kExample), {2, 4});
}

TEST(Evaluate, ConvexAndHalfWeightedABAgree) {
    // 0.5 * (5, 1) + 0.5 * (1.5, 4.5)
    expect_values(evaluate(Rule::convex(Rule::laissez_faire(), Rule::proportional(), 0.5), kExample),
                  {3.25, 2.75});
    expect_values(evaluate(Rule::ab(ScalarFn::constant(0.5), ScalarFn::scale(0.5)), kExample),
                  {3.25, 2.75});
    expect_values(evaluate(Rule::a_family(ScalarFn::constant(0.5)), kExample), {3.25, 2.75});
}

TEST(Evaluate, MatchesIndependentOracles) {
    const auto sq = [](double t) { return t * t; };
    const auto half = [](double) { return 0.5; };
    for (const auto& p : random_problems(300)) {
        auto near = [&](const Allocation& x, const std::vector<double>& want) {
            for (std::size_t i = 0; i < want.size(); ++i)
                ASSERT_NEAR(x[i], want[i], 1e-9 * p.scale());
        };
        near(evaluate(Rule::laissez_faire(), p), oracle::laissez_faire(p));
        near(evaluate(Rule::full(), p), oracle::full(p));
        near(evaluate(Rule::proportional(), p), oracle::proportional(p));
        near(evaluate(Rule::need_adjusted_full(), p), oracle::need_adjusted_full(p));
        near(evaluate(Rule::ab(ScalarFn::constant(0.5), ScalarFn::polynomial({0, 0, 1})), p),
             oracle::ab(p, half, sq));
        near(evaluate(Rule::b_family(ScalarFn::polynomial({0, 0, 1})), p),
             oracle::ab(p, [](double) { return 0.0; }, sq));
        near(evaluate(Rule::a_family(ScalarFn::affine(0.25, 0.5)), p),
             oracle::a_family(p, [](double t) { return 0.25 * t + 0.5; }));
        near(evaluate(Rule::linear(0.3, 0.2), p), oracle::linear(p, 0.3, 0.2));
        near(evaluate(Rule::linear_dual(-0.5, 1.0), p), oracle::linear_dual(p, -0.5, 1.0));
    }
}

TEST(EquivalentOn, Examples) {
    const auto problems = random_problems(100);
    EXPECT_TRUE(equivalent_on(Rule::ab(kZero, kId), Rule::proportional(), problems, 1e-9).equivalent);
    EXPECT_TRUE(equivalent_on(Rule::ab(kOne, kZero), Rule::laissez_faire(), problems, 1e-9).equivalent);
    const Problem single[] = {kExample};
    EXPECT_TRUE(equivalent_on(Rule::ab(ScalarFn::constant(0.5), ScalarFn::scale(0.5)),
                              Rule::convex(Rule::laissez_faire(), Rule::proportional(), 0.5), single, 1e-9)
                    .equivalent);
}

TEST(EquivalentOn, ReportsWorstDeviationAndWitness) {
    const Problem problems[] = {Problem::from_profiles({1, 1}, {1, 1}), kExample};
    const auto v = equivalent_on(Rule::full(), Rule::proportional(), problems, 1e-9);
    EXPECT_FALSE(v.equivalent);
    EXPECT_DOUBLE_EQ(v.max_deviation, 1.5);
    ASSERT_TRUE(v.witness.has_value());
    EXPECT_EQ(*v.witness, 1u);
    EXPECT_THROW(equivalent_on(Rule::full(), Rule::full(), problems, 0.0), Error);
}

struct Embedding {
    const char* name;
    Rule lhs, rhs;
};

TEST(FamilyEmbeddings, AllHoldOnRandomProblems) {
    const auto lf = Rule::laissez_faire(), pr = Rule::proportional(), fu = Rule::full(),
               nf = Rule::need_adjusted_full();
    const std::vector<Embedding> cases{
        {"AB(0,id)=PROP", Rule::ab(kZero, kId), pr},
        {"AB(1,0)=LF", Rule::ab(kOne, kZero), lf},
        {"AB(0,0)=FULL", Rule::ab(kZero, kZero), fu},
        {"AB(0,1)=NAFR", Rule::ab(kZero, kOne), nf},
        {"LIN(1,0)=LF", Rule::linear(1, 0), lf},
        {"LIN(0,1)=PROP", Rule::linear(0, 1), pr},
        {"LIN(0,0)=FULL", Rule::linear(0, 0), fu},
        {"LINDUAL(0,0)=NAFR", Rule::linear_dual(0, 0), nf},
        {"AFAM(0)=PROP", Rule::a_family(kZero), pr},
        {"AFAM(1)=LF", Rule::a_family(kOne), lf},
        {"BFAM(id)=PROP", Rule::b_family(kId), pr},
        {"BFAM(0)=FULL", Rule::b_family(kZero), fu},
        {"AFAM(0.3)=CONVEX(LF,PROP,0.3)", Rule::a_family(ScalarFn::constant(0.3)),
         Rule::convex(lf, pr, 0.3)},
        {"CONVEX(NAFR,NAFR,0.7)=NAFR", Rule::convex(nf, nf, 0.7), nf},
    };
    const auto problems = random_problems(100, 9);
    for (const auto& c : cases) {
        const auto v = equivalent_on(c.lhs, c.rhs, problems, 1e-9);
        EXPECT_TRUE(v.equivalent) << c.name << " deviates by " << v.max_deviation;
    }
}

TEST(RuleProperties, BalanceAndSingleAgentForRandomRules) {
    const auto problems = random_problems(40, 3);
    for (std::size_t k = 0; k < 200; ++k) {
        Rng rng(11, 0, k);
        const auto rule = gen::catalog_rule(rng);
        for (const auto& p : problems) {
            // evaluate() itself throws Unbalanced on failure; re-check independently.
            const auto x = evaluate(rule, p);
            ASSERT_NEAR(oracle::sum(x.vector()), p.total_income(), balance_tolerance(p.total_income()))
                << rule.to_string();
        }
        const auto solo = Problem::from_profiles({-3.5}, {2.0});
        ASSERT_NEAR(evaluate(rule, solo)[0], -3.5, 1e-12) << rule.to_string();
    }
}

TEST(RuleProperties, ConvexOfARuleWithItselfIsTheRule) {
    const auto problems = random_problems(50, 4);
    for (std::size_t k = 0; k < 50; ++k) {
        Rng rng(12, 0, k);
        const auto rule = gen::catalog_rule(rng, 1);
        const double w = rng.uniform(0, 1);
        EXPECT_TRUE(equivalent_on(Rule::convex(rule, rule, w), rule, problems, 1e-9).equivalent)
            << rule.to_string();
    }
}

TEST(RuleProperties, AFamilyIsConvexCombinationOfLaissezFaireAndProportional) {
    const auto problems = random_problems(100, 5);
    for (double alpha : {0.0, 0.1, 0.5, 0.9, 1.0}) {
        EXPECT_TRUE(equivalent_on(Rule::a_family(ScalarFn::constant(alpha)),
                                  Rule::convex(Rule::laissez_faire(), Rule::proportional(), alpha),
                                  problems, 1e-9)
                        .equivalent);
    }
}

TEST(AbForm, ReproducesEveryCatalogRule) {
    const auto problems = random_problems(30, 6);
    for (std::size_t k = 0; k < 200; ++k) {
        Rng rng(13, 0, k);
        const auto rule = gen::catalog_rule(rng);
        const auto form = ab_form(rule);
        ASSERT_TRUE(form.has_value());
        const auto rebuilt = Rule::ab(form->first, form->second);
        for (const auto& p : problems) {
            ASSERT_LE(max_abs_difference(evaluate(rule, p).values(), evaluate(rebuilt, p).values()),
                      1e-9 * p.scale())
                << rule.to_string() << " vs " << rebuilt.to_string();
        }
    }
    EXPECT_FALSE(ab_form(oracle::squared_need_rule()).has_value());
}

TEST(Rule, RejectsWeightsOutsideUnitInterval) {
    try {
        Rule::convex(Rule::laissez_faire(), Rule::proportional(), 1.5);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::InvalidWeight);
    }
    EXPECT_THROW(Rule::convex(Rule::laissez_faire(), Rule::proportional(), -0.1), Error);
    EXPECT_THROW(Rule::convex(Rule::laissez_faire(), Rule::proportional(), std::nan("")), Error);
    EXPECT_NO_THROW(Rule::linear(-3.0, 7.0));
}

TEST(Rule, CustomRulesAreCheckedForShapeAndBalance) {
    const auto too_short = Rule::custom("short", [](const Problem&) { return std::vector<double>{1.0}; });
    const auto leaky = Rule::custom("leaky", [](const Problem& p) {
        return std::vector<double>(p.size(), 0.0);
    });
    try {
        evaluate(too_short, kExample);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::LengthMismatch);
    }
    const auto before = balance_audit();
    try {
        evaluate(leaky, kExample);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::Unbalanced);
    }
    EXPECT_EQ(balance_audit().violations, before.violations + 1);
}

TEST(Rule, StructuralEqualityAndText) {
    const auto a = Rule::convex(Rule::dual(Rule::full()), Rule::ab(kZero, kId), 0.25);
    const auto b = Rule::convex(Rule::dual(Rule::full()), Rule::ab(kZero, kId), 0.25);
    EXPECT_EQ(a, b);
    EXPECT_FALSE(a == Rule::convex(Rule::dual(Rule::full()), Rule::ab(kZero, kId), 0.5));
    EXPECT_EQ(a.to_string(), "convex(dual(full);ab:A=const:0,B=id;0.25)");
}

#include <gtest/gtest.h>

#include "generators.hpp"
#include "redist/error.hpp"
#include "redist/rule_parser.hpp"

using namespace redist;

namespace {

std::string parse_error(std::string_view text) {
    try {
        parse_rule(text);
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ParseError);
        return e.what();
    }
    ADD_FAILURE() << "no error for " << text;
    return {};
}

}  // namespace

TEST(ParseRule, ConcreteRules) {
    EXPECT_EQ(parse_rule("lf"), Rule::laissez_faire());
    EXPECT_EQ(parse_rule("full"), Rule::full());
    EXPECT_EQ(parse_rule(" prop "), Rule::proportional());
    EXPECT_EQ(parse_rule("nafr"), Rule::need_adjusted_full());
}

TEST(ParseRule, FamiliesAndCombinators) {
    EXPECT_EQ(parse_rule("ab:A=const:0.5,B=scale:0.5"),
              Rule::ab(ScalarFn::constant(0.5), ScalarFn::scale(0.5)));
    EXPECT_EQ(parse_rule("ab:a=id,b=affine:-1,1"),
              Rule::ab(ScalarFn::identity(), ScalarFn::affine(-1, 1)));
    EXPECT_EQ(parse_rule("afam:A=poly:1,0,+2"), Rule::a_family(ScalarFn::polynomial({1, 0, 2})));
    EXPECT_EQ(parse_rule("bfam:B=id"), Rule::b_family(ScalarFn::identity()));
    EXPECT_EQ(parse_rule("lin:0.3,0.2"), Rule::linear(0.3, 0.2));
    EXPECT_EQ(parse_rule("lindual:-1,2e0"), Rule::linear_dual(-1, 2));
    EXPECT_EQ(parse_rule("convex(lf; prop; 0.5)"),
              Rule::convex(Rule::laissez_faire(), Rule::proportional(), 0.5));
    EXPECT_EQ(parse_rule("dual(dual(full))"), Rule::dual(Rule::dual(Rule::full())));
}

TEST(ParseRule, PolynomialStopsBeforeNextLabel) {
    EXPECT_EQ(parse_rule("ab:A=poly:1,2,B=poly:3,4"),
              Rule::ab(ScalarFn::polynomial({1, 2}), ScalarFn::polynomial({3, 4})));
}

TEST(ParseRule, ErrorsNameTheOffendingToken) {
    EXPECT_NE(parse_error("foo").find("'foo'"), std::string::npos);
    EXPECT_NE(parse_error("convex(lf;prop;1.5)").find("1.5"), std::string::npos);
    EXPECT_NE(parse_error("ab:A=sqrt:2,B=id").find("sqrt"), std::string::npos);
    EXPECT_NE(parse_error("lin:0.3").find("<end of input>"), std::string::npos);
    EXPECT_NE(parse_error("prop extra").find("extra"), std::string::npos);
    EXPECT_NE(parse_error("lin:nan,1").find("offset 4"), std::string::npos);
    parse_error("");
    parse_error("dual(lf");
    parse_error("afam:B=id");
}

TEST(ParseScalarFn, Forms) {
    EXPECT_EQ(parse_scalar_fn("const:-2"), ScalarFn::constant(-2));
    EXPECT_EQ(parse_scalar_fn("scale:.5"), ScalarFn::scale(0.5));
    EXPECT_THROW(parse_scalar_fn("id,"), Error);
}

TEST(ParseRuleList, SplitsOnTopLevelCommas) {
    const auto rules = parse_rule_list("lf,ab:A=affine:1,0,B=const:2,lin:1,2,prop");
    ASSERT_EQ(rules.size(), 4u);
    EXPECT_EQ(rules[0], Rule::laissez_faire());
    EXPECT_EQ(rules[1], Rule::ab(ScalarFn::affine(1, 0), ScalarFn::constant(2)));
    EXPECT_EQ(rules[2], Rule::linear(1, 2));
    EXPECT_EQ(rules[3], Rule::proportional());
    EXPECT_THROW(parse_rule_list("lf,"), Error);
}

TEST(ParseRuleProperties, PrintThenParseRoundTrips) {
    for (std::size_t k = 0; k < 500; ++k) {
        Rng rng(21, 0, k);
        const auto rule = gen::catalog_rule(rng, 3);
        const auto text = rule.to_string();
        ASSERT_EQ(parse_rule(text), rule) << text;
        ASSERT_EQ(parse_rule(text).to_string(), text);
    }
}

TEST(ParseRuleProperties, RoundTripsArbitraryDoubles) {
    for (std::size_t k = 0; k < 500; ++k) {
        Rng rng(22, 0, k);
        const double a = rng.uniform(-1e6, 1e6), b = rng.uniform(-1e-6, 1e-6);
        const auto rule = Rule::ab(ScalarFn::affine(a, b), ScalarFn::constant(b * a));
        ASSERT_EQ(parse_rule(rule.to_string()), rule) << rule.to_string();
    }
}

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "aimlinsys/expression.hpp"

using namespace aimlinsys;

namespace {

ExprPtr random_tree(std::mt19937& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 1 ? 2 : 9);
  std::uniform_int_distribution<int> small(-9, 9), den(1, 5), fn(0, 6), ex(0, 4);
  switch (pick(rng)) {
    case 0: {
      Rational q(small(rng), den(rng));
      q.canonicalize();
      return Expr::number(q);
    }
    case 1:
      return Expr::variable();
    case 2:
      return Expr::parameter(std::string(1, static_cast<char>('a' + std::abs(small(rng)) % 4)));
    case 3:
      return Expr::unary(Expr::Kind::neg, random_tree(rng, depth - 1));
    case 4:
      return Expr::binary(Expr::Kind::add, random_tree(rng, depth - 1), random_tree(rng, depth - 1));
    case 5:
      return Expr::binary(Expr::Kind::sub, random_tree(rng, depth - 1), random_tree(rng, depth - 1));
    case 6:
      return Expr::binary(Expr::Kind::mul, random_tree(rng, depth - 1), random_tree(rng, depth - 1));
    case 7:
      return Expr::binary(Expr::Kind::div, random_tree(rng, depth - 1), random_tree(rng, depth - 1));
    case 8:
      return Expr::binary(Expr::Kind::pow, random_tree(rng, depth - 1), Expr::number(ex(rng)));
    default:
      return Expr::call(expression_functions()[static_cast<std::size_t>(fn(rng))], random_tree(rng, depth - 1));
  }
}

RationalFunction rf(const std::string& s, const std::map<std::string, Rational>& p = {}) {
  return to_rational_function(parse_expression(s), p);
}

}  // namespace

TEST(Expression, RoundTripRandomTrees) {
  std::mt19937 rng(2024);
  for (int i = 0; i < 200; ++i) {
    ExprPtr e = canonicalize(random_tree(rng, 5));
    std::string text = print_expression(e);
    ExprPtr back = parse_expression(text);
    EXPECT_TRUE(structurally_equal(back, e)) << text << " -> " << print_expression(back);
    EXPECT_EQ(print_expression(back), text);
  }
}

TEST(Expression, Precedence) {
  EXPECT_EQ(rf("1 + 2*x^2"), rf("1 + (2*(x^2))"));
  EXPECT_EQ(rf("-x^2"), rf("-(x^2)"));
  EXPECT_EQ(rf("2^3^2"), RationalFunction::constant(512));
  EXPECT_EQ(rf("6/2/3"), RationalFunction::constant(1));
  EXPECT_EQ(rf("1 - 2 - 3"), RationalFunction::constant(-4));
}

TEST(Expression, ImplicitMultiplication) {
  EXPECT_EQ(rf("2x"), rf("2*x"));
  EXPECT_EQ(rf("3(x+1)"), rf("3*x + 3"));
  EXPECT_EQ(rf("x(1-x)"), rf("x - x^2"));
}

TEST(Expression, BindsParameters) {
  RationalFunction f = rf("a/x", {{"a", 2}});
  EXPECT_EQ(f, RationalFunction(Polynomial::constant(2), Polynomial::x()));
  EXPECT_THROW(rf("a/x"), ParseError);
}

TEST(Expression, DenominatorRoots) {
  RationalFunction f = rf("(2*x + 1)/(x^2 - 1)");
  EXPECT_EQ(f.den(), Polynomial(std::vector<Rational>{-1, 0, 1}));
}

TEST(Expression, UnicodeMinusAndDecimals) {
  EXPECT_EQ(rf("(−2n+1)x", {{"n", 1}}), rf("-x"));
  EXPECT_EQ(rf("0.25x"), rf("x/4"));
  EXPECT_EQ(rf("1e-2"), RationalFunction::constant(Rational(1, 100)));
  EXPECT_EQ(rf("0.0625"), RationalFunction::constant(Rational(1, 16)));
  EXPECT_EQ(rf("007"), RationalFunction::constant(7));
}

TEST(Expression, ErrorPositions) {
  try {
    parse_expression("tanh(x");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1);
    EXPECT_EQ(e.column(), 7);
  }
  try {
    parse_expression("1 + * x");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.column(), 5);
  }
  EXPECT_THROW(rf("foo(x)"), ParseError);  // foo·x with foo unbound
  EXPECT_THROW(parse_expression("1 $ 2"), ParseError);
}

TEST(Expression, ExactModeRejectsTranscendentals) {
  EXPECT_THROW(rf("exp(x)"), ParseError);
  EXPECT_THROW(rf("x^(1/2)"), ParseError);
  CoefficientFn c = to_coefficient(parse_expression("exp(x)"), {}, EvalMode::numeric);
  EXPECT_NEAR(std::abs(c(1.0) - std::exp(1.0)), 0.0, 1e-14);
}

TEST(Expression, EvaluateAndDerivative) {
  ExprPtr e = parse_expression("sin(x)*exp(-x^2) + sqrt(x)/tanh(x)");
  ExprPtr d = differentiate(e);
  for (double x : {0.3, 1.1, 2.0}) {
    double h = 1e-5;
    Complex fd = (evaluate(e, x + h) - evaluate(e, x - h)) / (2 * h);
    EXPECT_NEAR(std::abs(evaluate(d, x) - fd), 0.0, 1e-8);
  }
  EXPECT_TRUE(has_function_call(e));
  EXPECT_FALSE(has_function_call(parse_expression("x^2 + 1")));
}

TEST(Expression, NumericCoefficientDerivatives) {
  CoefficientFn c = to_coefficient(parse_expression("log(x) x^2"), {}, EvalMode::numeric);
  Jet j = c.jet(2.0);
  EXPECT_NEAR(std::abs(j.d1 - (2 * 2.0 * std::log(2.0) + 2.0)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(j.d2 - (2 * std::log(2.0) + 3.0)), 0.0, 1e-10);
}

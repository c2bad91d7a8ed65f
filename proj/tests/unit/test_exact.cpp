#include <gtest/gtest.h>

#include <random>

#include "aimlinsys/errors.hpp"
#include "aimlinsys/polynomial.hpp"
#include "aimlinsys/rational.hpp"
#include "aimlinsys/rational_function.hpp"
#include "aimlinsys/roots.hpp"

using namespace aimlinsys;

namespace {

Polynomial poly(std::initializer_list<long> c) {
  std::vector<Rational> v;
  for (long x : c) v.emplace_back(x);
  return Polynomial(v);
}

Polynomial random_poly(std::mt19937& rng, int max_degree) {
  std::uniform_int_distribution<int> deg(0, max_degree), coef(-6, 6);
  std::vector<Rational> v;
  int d = deg(rng);
  for (int i = 0; i <= d; ++i) v.emplace_back(coef(rng), 1 + std::abs(coef(rng)));
  return Polynomial(v);
}

// Textbook Euclid over Q, normalized monic at the end.
Polynomial naive_gcd(Polynomial a, Polynomial b) {
  while (!b.is_zero()) {
    Polynomial r = divmod(a, b).second;
    a = b;
    b = r;
  }
  return a.is_zero() ? a : a.monic();
}

}  // namespace

TEST(Rational, ParsesDecimalsAndScientific) {
  EXPECT_EQ(parse_rational("-1.25"), Rational(-5, 4));
  EXPECT_EQ(parse_rational("3e-2"), Rational(3, 100));
  EXPECT_EQ(parse_rational("6/4"), Rational(3, 2));
  EXPECT_EQ(parse_rational("0"), Rational(0));
  EXPECT_THROW(parse_rational("1/0"), Error);
  EXPECT_THROW(parse_rational("abc"), Error);
}

TEST(Rational, CanonicalForm) {
  Rational q(-6, -4);
  q.canonicalize();
  EXPECT_EQ(q.get_num(), 3);
  EXPECT_EQ(q.get_den(), 2);
  Rational r(-2, 6);
  r.canonicalize();
  EXPECT_EQ(to_string(r), "-1/3");
}

TEST(Rational, ExactSqrt) {
  EXPECT_EQ(exact_sqrt(Rational(9, 4)), Rational(3, 2));
  EXPECT_FALSE(exact_sqrt(Rational(2)).has_value());
  EXPECT_FALSE(exact_sqrt(Rational(-4)).has_value());
}

TEST(Rational, FromDoubleIsExact) {
  for (double x : {0.1, -3.75, 1e-300, 12345.678}) EXPECT_EQ(rational_from_double(x).get_d(), x);
}

TEST(Polynomial, TrimsAndDegrees) {
  EXPECT_TRUE(poly({0, 0}).is_zero());
  EXPECT_EQ(poly({0, 0}).degree(), -1);
  EXPECT_EQ(poly({1, 2, 0}).degree(), 1);
  EXPECT_EQ(poly({0, 0, 3}).low_order(), 2);
}

TEST(Polynomial, DivmodReconstructs) {
  std::mt19937 rng(7);
  for (int t = 0; t < 200; ++t) {
    Polynomial a = random_poly(rng, 8), b = random_poly(rng, 5);
    if (b.is_zero()) continue;
    auto [q, r] = divmod(a, b);
    EXPECT_EQ(q * b + r, a);
    EXPECT_LT(r.degree(), b.degree() == 0 ? 0 : b.degree());
  }
}

TEST(Polynomial, GcdMatchesEuclid) {
  std::mt19937 rng(11);
  for (int t = 0; t < 200; ++t) {
    Polynomial common = random_poly(rng, 3);
    Polynomial a = random_poly(rng, 5) * common, b = random_poly(rng, 5) * common;
    EXPECT_EQ(gcd(a, b), naive_gcd(a, b)) << a.to_string() << " / " << b.to_string();
  }
  EXPECT_TRUE(gcd(Polynomial(), Polynomial()).is_zero());
}

TEST(Polynomial, DerivativeAndCompose) {
  Polynomial p = poly({1, -3, 0, 2});
  EXPECT_EQ(p.derivative(), poly({-3, 0, 6}));
  EXPECT_EQ(poly({0, 0, 1}).compose(poly({1, 1})), poly({1, 2, 1}));
  EXPECT_EQ(p.eval(Rational(2)), Rational(11));
}

TEST(Polynomial, DegreeGuard) {
  Polynomial big = Polynomial::monomial(1, 300);
  EXPECT_THROW(big * big, ResourceError);
}

TEST(RationalFunction, CanonicalAndStructuralEquality) {
  RationalFunction f(poly({-1, 0, 1}), poly({-2, 2}));  // (x^2-1)/(2x-2) = (x+1)/2
  EXPECT_TRUE(f.is_polynomial());
  EXPECT_EQ(f, RationalFunction(poly({1, 1}) * Rational(1, 2)));
  RationalFunction g(poly({1}), poly({0, -3}));
  EXPECT_EQ(g.den(), poly({0, 1}));
  EXPECT_EQ(g.num(), Polynomial::constant(Rational(-1, 3)));
  EXPECT_THROW(RationalFunction(poly({1}), Polynomial()), DivisionByZeroError);
}

TEST(RationalFunction, FieldIdentities) {
  std::mt19937 rng(5);
  for (int t = 0; t < 100; ++t) {
    Polynomial n1 = random_poly(rng, 3), d1 = random_poly(rng, 3), n2 = random_poly(rng, 3), d2 = random_poly(rng, 3);
    if (d1.is_zero() || d2.is_zero() || n2.is_zero()) continue;
    RationalFunction a(n1, d1), b(n2, d2);
    EXPECT_EQ((a / b) * b, a);
    EXPECT_EQ((a + b) - b, a);
    EXPECT_EQ((a * b).derivative(), a.derivative() * b + a * b.derivative());
  }
}

TEST(Roots, SturmCountsKnownRoots) {
  Polynomial p = poly({-1, 0, 1}) * poly({-3, 1});  // roots -1, 1, 3
  EXPECT_EQ(count_real_roots(p, -2.0, 4.0), 3);
  EXPECT_EQ(count_real_roots(p, 1.0, 3.0), 2);
  EXPECT_EQ(count_real_roots(p * p, -2.0, 0.0), 1);
  auto r = real_roots(p, -5.0, 5.0);
  ASSERT_EQ(r.size(), 3u);
  EXPECT_NEAR(r[0], -1.0, 1e-12);
  EXPECT_NEAR(r[2], 3.0, 1e-12);
}

TEST(Roots, FlagsDenominatorRootsAgainstDomain) {
  RationalFunction f(poly({1, 2}), poly({-1, 0, 1}));
  EXPECT_TRUE(first_pole(f, Domain{0.0, 2.0}).has_value());
  EXPECT_FALSE(first_pole(f, Domain{1.5, 2.0}).has_value());
}

TEST(Roots, RootFreeGapPadsInteriorRoots) {
  Domain g = widest_root_free_gap({poly({0, 1})}, Domain{-1.0, 3.0});
  EXPECT_GT(g.lo, 0.0);
  EXPECT_DOUBLE_EQ(g.hi, 3.0);
}

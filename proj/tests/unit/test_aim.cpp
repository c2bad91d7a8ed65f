#include <gtest/gtest.h>

#include "aimlinsys/aim.hpp"
#include "aimlinsys/errors.hpp"
#include "aimlinsys/specfun.hpp"
#include "oracles.hpp"

using namespace aimlinsys;

namespace {

RationalFunction over_x(const Rational& c) { return RationalFunction(Polynomial::constant(c), Polynomial::x()); }

LinearSystem power_system(const Rational& a, const Rational& b, const Rational& c, const Rational& d) {
  return make_exact_system(over_x(a), over_x(b), over_x(c), over_x(d), Domain{1.0, 2.0});
}

LinearSystem constant_system(long l, long s, long w, long r) {
  auto k = [](long v) { return RationalFunction::constant(v); };
  return make_exact_system(k(l), k(s), k(w), k(r), Domain{0.0, 1.0});
}

}  // namespace

TEST(Aim, DeltaProductLaw) {
  const long vals[] = {-2, 1, 3};
  int checked = 0;
  for (long a : vals)
    for (long b : vals)
      for (long c : vals)
        for (long d : vals) {
          if (a * d - b * c == 0) continue;
          AimState st = aim_iterate(power_system(a, b, c, d), 4);
          for (int n = 1; n <= 4; ++n) {
            Rational prod = 1;
            for (int m = 0; m < n; ++m) prod *= Rational(m * m - m * (a + d) + a * d - b * c);
            RationalFunction expected(Polynomial::constant(-b * prod), Polynomial::monomial(1, 2 * n + 1));
            EXPECT_EQ(st.deltas[static_cast<std::size_t>(n)], expected) << a << b << c << d << " n=" << n;
            ++checked;
          }
        }
  EXPECT_GT(checked, 200);
}

// For a mode v·e^{rx} of a constant system, φ₁^{(n+1)} = λₙφ₁ + sₙφ₂ gives
// λₙv₁ + sₙv₂ = r^{n+1}v₁.
TEST(Aim, RecursionReproducesHigherDerivatives) {
  AimState st = aim_iterate(constant_system(1, 2, 3, 2), 8);
  for (int n = 0; n <= 8; ++n) {
    const auto& lv = st.iterates[static_cast<std::size_t>(n)];
    Rational l = lv.lambda.constant_value(), s = lv.s.constant_value();
    Rational w = lv.omega.constant_value(), r = lv.rho.constant_value();
    Rational p4 = 1, pm = 1;
    for (int k = 0; k <= n; ++k) {
      p4 *= 4;
      pm *= -1;
    }
    EXPECT_EQ(l * 2 + s * 3, 2 * p4);
    EXPECT_EQ(w * 2 + r * 3, 3 * p4);
    EXPECT_EQ(-l + s, -pm);
    EXPECT_EQ(-w + r, pm);
  }
}

TEST(Aim, IteratorMatchesBatch) {
  LinearSystem sys = power_system(2, 1, Rational(3, 2), 3);
  AimIterator it(sys);
  for (int k = 0; k < 5; ++k) it.step();
  AimState batch = aim_iterate(sys, 5);
  for (int n = 1; n <= 5; ++n) EXPECT_EQ(it.state().deltas[n], batch.deltas[n]);
}

TEST(Aim, TerminatesForPowerFamily) {
  for (int n = 1; n <= 6; ++n) {
    Rational b = 1, c = 2, d = Rational(1, 2), m = n - 1;
    Rational a = (b * c - m * m + m * d) / (d - m);
    auto cert = find_termination(power_system(a, b, c, d), 12);
    ASSERT_TRUE(cert.has_value()) << n;
    EXPECT_EQ(cert->kind, RatioKind::alpha);
    EXPECT_EQ(cert->ratio, RationalFunction::constant((d - m) / c));
  }
}

TEST(Aim, NoTerminationWithinLimit) {
  auto x = RationalFunction::x();
  auto one = RationalFunction::constant(1);
  LinearSystem sys = make_exact_system(x, one, one, RationalFunction(), Domain{0.0, 1.0});
  EXPECT_FALSE(find_termination(sys, 10).has_value());
  AimState st = aim_iterate(sys, 11);
  for (int n = 1; n <= 11; ++n) EXPECT_FALSE(st.deltas[n].is_zero());
}

TEST(Aim, ConstantRationalFixedPoints) {
  auto roots = rational_fixed_points(constant_system(1, 2, 3, 2), RatioKind::alpha);
  ASSERT_EQ(roots.size(), 2u);
  EXPECT_EQ(roots[0], Rational(1));
  EXPECT_EQ(roots[1], Rational(-2, 3));
  EXPECT_TRUE(rational_fixed_points(constant_system(6, -1, 5, 4), RatioKind::alpha).empty());
}

TEST(Aim, EtaVanishesForCounterexample) {
  auto f = RationalFunction(Polynomial::monomial(5, 1)), g = RationalFunction(Polynomial::monomial(3, 1));
  LinearSystem sys = make_exact_system(f, f, g, g, Domain{0.0, 1.0});
  EXPECT_TRUE(eta(sys, 1).is_zero());
  EXPECT_TRUE(aim_iterate(sys, 3).etas[1].is_zero());
}

TEST(Aim, BetaBranch) {
  // Relabelling swaps the alpha and beta sequences, up to sign.
  LinearSystem sys = power_system(2, 1, Rational(3, 2), 3);
  AimState a = aim_iterate(sys, 4), b = aim_iterate(sys.swapped(), 4);
  for (int n = 1; n <= 4; ++n) EXPECT_EQ(a.Deltas[n], -b.deltas[n]);
}

TEST(Aim, RejectsNumericCoefficients) {
  LinearSystem sys{CoefficientFn::constant(1.0), Rational(1), Rational(1), Rational(1), {0.0, 1.0}};
  EXPECT_THROW(aim_iterate(sys, 2), ParameterError);
  EXPECT_THROW(aim_iterate(constant_system(1, 1, 1, 1), 0), ParameterError);
}

TEST(FG, HermiteRatio) {
  for (int n = 1; n <= 6; ++n) {
    FGState st = fg_iterate(RationalFunction(Polynomial::monomial(2, 1)), Rational(-2 * n), n);
    Polynomial h = oracle::hermite_explicit(static_cast<unsigned>(n));
    RationalFunction lhs = st.G[n - 1] / st.F[n - 1];
    EXPECT_EQ(lhs, -RationalFunction(h.derivative(), h)) << n;
    EXPECT_TRUE(st.fg_deltas[n].is_zero());
  }
}

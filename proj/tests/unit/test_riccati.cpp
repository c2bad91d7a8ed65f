#include <gtest/gtest.h>

#include <cmath>

#include "aimlinsys/aim.hpp"
#include "aimlinsys/errors.hpp"
#include "aimlinsys/families.hpp"
#include "aimlinsys/riccati.hpp"
#include "aimlinsys/specfun.hpp"
#include "oracles.hpp"

using namespace aimlinsys;

namespace {

RationalFunction k(long v) { return RationalFunction::constant(v); }

void expect_exact_riccati(const FamilyInstance& inst) {
  auto cert = find_termination(inst.system, std::max(inst.n + 2, 10));
  ASSERT_TRUE(cert.has_value()) << inst.id();
  const LinearSystem& sys = cert->kind == RatioKind::alpha ? inst.system : inst.system.swapped();
  AlphaFunction a{CoefficientFn(cert->ratio), Provenance::aim, "", std::nullopt};
  EXPECT_TRUE(riccati_residual(sys, a).exact().is_zero()) << inst.id();
}

}  // namespace

TEST(Riccati, TerminationRatiosSolveRiccatiTableI) {
  for (const auto& inst : shipped_instances("I")) expect_exact_riccati(inst);
}

TEST(Riccati, TerminationRatiosSolveRiccatiTableII) {
  for (const auto& inst : shipped_instances("II")) expect_exact_riccati(inst);
}

TEST(Riccati, ResidualIsNonzeroForWrongAlpha) {
  LinearSystem sys = make_exact_system(k(1), k(2), k(3), k(2), {0.0, 1.0});
  AlphaFunction good{CoefficientFn(Rational(-2, 3)), Provenance::user, "", std::nullopt};
  AlphaFunction bad{CoefficientFn(Rational(1, 2)), Provenance::user, "", std::nullopt};
  EXPECT_TRUE(riccati_residual(sys, good).exact().is_zero());
  EXPECT_FALSE(riccati_residual(sys, bad).exact().is_zero());
  EXPECT_GT(max_riccati_residual(sys, bad, sys.domain), 1e-3);
}

TEST(Riccati, SeparableSingleClass) {
  // α' = α² - 1 with α(0) = 0 is -tanh(x).
  LinearSystem sys = make_exact_system(RationalFunction(), k(1), k(1), RationalFunction(), {0.0, 1.0});
  SeparabilityClass cls = detect_separable(sys);
  ASSERT_NE(cls.kind, SeparabilityClass::Kind::none);
  AlphaFunction a = solve_separable(sys, cls, 0.0);
  for (double x : {0.0, 0.3, 0.9}) EXPECT_NEAR(std::abs(a.fn(x) + std::tanh(x)), 0.0, 1e-9);
  EXPECT_LT(max_riccati_residual(sys, a, sys.domain), 1e-8);
}

TEST(Riccati, SeparableWithVariableWeight) {
  // h = 1 + x², A = 1, C = -1: α' = h(α² + 1), α = tan(x + x³/3).
  RationalFunction h(Polynomial(std::vector<Rational>{1, 0, 1}));
  LinearSystem sys = make_exact_system(RationalFunction(), -h, h, RationalFunction(), {0.0, 0.8});
  AlphaFunction a = solve_separable(sys, detect_separable(sys), 0.0);
  for (double x : {0.2, 0.5, 0.8}) EXPECT_NEAR(std::abs(a.fn(x) - std::tan(x + x * x * x / 3)), 0.0, 1e-8);
}

TEST(Riccati, SeparablePolePolicy) {
  // α = tan(x) has a pole at π/2 inside [0, 2].
  LinearSystem sys = make_exact_system(RationalFunction(), k(-1), k(1), RationalFunction(), {0.0, 2.0});
  SeparabilityClass cls = detect_separable(sys);
  AlphaFunction a = solve_separable(sys, cls, 0.0, PolePolicy::restrict);
  ASSERT_TRUE(a.valid.has_value());
  EXPECT_LT(a.valid->hi, M_PI / 2);
  EXPECT_THROW(solve_separable(sys, cls, 0.0, PolePolicy::reject), DomainRestrictionError);
}

TEST(Riccati, NotSeparable) {
  RationalFunction x = RationalFunction::x();
  LinearSystem sys = make_exact_system(x, k(1), x * x, RationalFunction(), {0.5, 1.0});
  EXPECT_EQ(detect_separable(sys).kind, SeparabilityClass::Kind::none);
}

TEST(Riccati, HermiteFromFG) {
  for (int n = 1; n <= 6; ++n) {
    FGSpec spec;
    spec.F0 = CoefficientFn(RationalFunction(Polynomial::monomial(2, 1)));
    spec.G0 = CoefficientFn(Rational(-2 * n));
    spec.lambda0 = CoefficientFn(Rational(0));
    spec.rho0 = CoefficientFn(Rational(0));
    spec.domain = {0.1, 0.3};
    spec.anchor = 0.2;
    auto [sys, alpha] = alpha_from_fg(spec, n);
    Domain d = alpha.valid.value_or(sys.domain);
    EXPECT_LT(max_riccati_residual(sys, alpha, d), 1e-8) << n;
    // α = -(H'/H)·e^{-W} with W = x² - x0².
    Polynomial h = oracle::hermite_explicit(static_cast<unsigned>(n));
    double x = 0.25;
    double expected = -h.derivative().eval(x) / h.eval(x) * std::exp(-(x * x - 0.04));
    EXPECT_NEAR(std::abs(alpha.fn(x) - expected), 0.0, 1e-9 * (1 + std::abs(expected))) << n;
  }
}

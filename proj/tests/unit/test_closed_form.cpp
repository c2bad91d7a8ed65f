#include <gtest/gtest.h>

#include <cmath>

#include "aimlinsys/closed_form.hpp"
#include "aimlinsys/errors.hpp"
#include "aimlinsys/verify.hpp"
#include "oracles.hpp"

using namespace aimlinsys;

namespace {

using CVec = std::vector<Complex>;

LinearSystem constant_system(const Rational& l, const Rational& s, const Rational& w, const Rational& r,
                             Domain d = {0.0, 1.0}) {
  auto k = [](const Rational& v) { return RationalFunction::constant(v); };
  return make_exact_system(k(l), k(s), k(w), k(r), d);
}

// Largest relative gap between sol and a fine RK4 run started from sol(x0).
double rk4_gap(const LinearSystem& sys, const SolutionEvaluator& sol, double x1, int steps = 4000) {
  auto rhs = [&](double x, const CVec& y) {
    return CVec{sys.lambda0(x) * y[0] + sys.s0(x) * y[1], sys.omega0(x) * y[0] + sys.rho0(x) * y[1]};
  };
  Pair p0 = sol(sol.anchor());
  CVec y = oracle::rk4(rhs, {p0[0], p0[1]}, sol.anchor(), x1, steps);
  Pair p1 = sol(x1);
  double scale = std::max(1.0, std::abs(y[0]) + std::abs(y[1]));
  return (std::abs(p1[0] - y[0]) + std::abs(p1[1] - y[1])) / scale;
}

}  // namespace

TEST(ClosedForm, ConstantRealRootsAndRates) {
  ConstCoefSolution cs = solve_constant(1.0, 2.0, 3.0, 2.0);
  EXPECT_NEAR(std::abs(cs.alpha_plus - 1.0), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(cs.alpha_minus + 2.0 / 3.0), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(cs.exponents[0] - 4.0), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(cs.exponents[1] + 1.0), 0.0, 1e-14);
}

TEST(ClosedForm, ConstantRealModes) {
  SolutionEvaluator sol = solve_constant(1.0, 2.0, 3.0, 2.0).evaluator(1.0, 0.0, 0.0, {0.0, 1.0});
  // The e^{4x} mode is proportional to (2/5, 3/5).
  for (double x : {0.0, 0.3, 1.0}) {
    Pair p = sol.basis(0, x);
    EXPECT_NEAR(std::abs(p[0] * 3.0 - p[1] * 2.0), 0.0, 1e-12 * std::exp(4 * x));
    EXPECT_NEAR(std::abs(p[0] / sol.basis(0, 0.0)[0] - std::exp(4 * x)), 0.0, 1e-12 * std::exp(4 * x));
    Pair q = sol.basis(1, x);
    EXPECT_NEAR(std::abs(q[0] + q[1]), 0.0, 1e-12);
  }
}

TEST(ClosedForm, ConstantComplexRoots) {
  ConstCoefSolution cs = solve_constant(6.0, -1.0, 5.0, 4.0);
  EXPECT_NEAR(std::abs(cs.alpha_plus - Complex(-1, 2) / 5.0), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(cs.alpha_minus - Complex(-1, -2) / 5.0), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(cs.exponents[0] - Complex(5, 2)), 0.0, 1e-13);
  EXPECT_NEAR(std::abs(cs.exponents[1] - Complex(5, -2)), 0.0, 1e-13);
  LinearSystem sys = constant_system(6, -1, 5, 4, {0.0, 0.5});
  EXPECT_LT(rk4_gap(sys, cs.evaluator(1.0, 1.0, 0.0, sys.domain), 0.5), 1e-9);
}

TEST(ClosedForm, RootsGiveSameSpan) {
  for (auto [l, s, w, r] : {std::array<double, 4>{1, 2, 3, 2}, {6, -1, 5, 4}, {0.5, -2, 1, 3}}) {
    ConstCoefSolution a = solve_constant(l, s, w, r, 0), b = solve_constant(l, s, w, r, 1);
    SolutionEvaluator ea = a.evaluator(1.0, 0.0, 0.0, {0.0, 1.0}), eb = b.evaluator(1.0, 0.0, 0.0, {0.0, 1.0});
    // Express eb's basis in ea's basis at x0, then compare along the interval.
    Pair a0 = ea.basis(0, 0.0), a1 = ea.basis(1, 0.0);
    Complex det = a0[0] * a1[1] - a1[0] * a0[1];
    for (int k = 0; k < 2; ++k) {
      Pair t = eb.basis(k, 0.0);
      Complex c0 = (t[0] * a1[1] - a1[0] * t[1]) / det, c1 = (a0[0] * t[1] - t[0] * a0[1]) / det;
      for (int i = 0; i <= 20; ++i) {
        double x = i / 20.0;
        Pair u = eb.basis(k, x), p = ea.basis(0, x), q = ea.basis(1, x);
        double err = std::abs(u[0] - c0 * p[0] - c1 * q[0]) + std::abs(u[1] - c0 * p[1] - c1 * q[1]);
        EXPECT_LT(err / (1 + std::abs(u[0]) + std::abs(u[1])), 1e-9);
      }
    }
  }
}

TEST(ClosedForm, RepeatedRootUsesSecularMode) {
  // λ=ρ=1, ω=1, s=0: double exponent 1.
  ConstCoefSolution cs = solve_constant(1.0, 0.0, 1.0, 1.0);
  EXPECT_TRUE(cs.repeated);
  LinearSystem sys = constant_system(1, 0, 1, 1);
  EXPECT_LT(rk4_gap(sys, cs.evaluator(1.0, 1.0, 0.0, sys.domain), 1.0), 1e-9);
}

TEST(ClosedForm, DefectiveNeedsTriangular) {
  EXPECT_THROW(solve_constant(2.0, 1.0, 0.0, 2.0), DefectiveSystemError);
  SolutionEvaluator sol = solve_triangular(2.0, 1.0, 1.0, 1.0, 0.0, {0.0, 1.0});
  for (double x : {0.0, 0.4, 1.0}) {
    EXPECT_NEAR(std::abs(sol.phi2(x) - std::exp(2 * x)), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(sol.phi1(x) - (1 + x) * std::exp(2 * x)), 0.0, 1e-12);
  }
}

TEST(ClosedForm, PowerFamilyFromAlpha) {
  // λ₀=-3/x, s₀=1/x, ω₀=2/x, ρ₀=(1/2)/x has α = -1/4.
  auto ox = [](const Rational& c) { return RationalFunction(Polynomial::constant(c), Polynomial::x()); };
  LinearSystem sys = make_exact_system(ox(-3), ox(1), ox(2), ox(Rational(1, 2)), {1.0, 2.0});
  AlphaFunction a{CoefficientFn(Rational(-1, 4)), Provenance::aim, "", std::nullopt};
  SolutionEvaluator sol = build_solution_from_alpha(sys, a, 1.0, 1.0, 1.5);
  EXPECT_LT(rk4_gap(sys, sol, 2.0), 1e-9);
  EXPECT_LT(rk4_gap(sys, sol, 1.0), 1e-9);
  // Exponents x^{-7/2} and x^{1}: the second basis vector's φ₂ is x^{n-1}.
  EXPECT_NEAR(std::abs(sol.basis(1, 2.0)[1] / sol.basis(1, 1.0)[1]), 2.0, 1e-7);
}

TEST(ClosedForm, BetaBranchAgreesWithOracle) {
  auto ox = [](const Rational& c) { return RationalFunction(Polynomial::constant(c), Polynomial::x()); };
  LinearSystem sys = make_exact_system(ox(-3), ox(1), ox(2), ox(Rational(1, 2)), {1.0, 2.0});
  // The α of sys is the β ratio of its relabelled twin.
  AlphaFunction b{CoefficientFn(Rational(-1, 4)), Provenance::aim, "", std::nullopt};
  LinearSystem twin = sys.swapped();
  SolutionEvaluator sol = build_solution_from_beta(twin, b, 1.0, 1.0, 1.5);
  EXPECT_LT(rk4_gap(twin, sol, 2.0), 1e-9);
  EXPECT_LT(rk4_gap(twin, sol, 1.0), 1e-9);
}

TEST(ClosedForm, RankOneCounterexample) {
  CoefficientFn f(RationalFunction(Polynomial::monomial(5, 1))), g(RationalFunction(Polynomial::monomial(3, 1)));
  SolutionEvaluator sol = solve_rank_one(f, g, RankOneSign::plus, 1.0, 1.0, 0.0, {0.0, 1.0});
  LinearSystem sys = rank_one_system(f, g, RankOneSign::plus, {0.0, 1.0});
  EXPECT_LT(rk4_gap(sys, sol, 1.0, 20000), 1e-8);
  // φ₁ + φ₂ ∝ e^{4x²}, 3φ₁ - 5φ₂ is constant.
  Complex s0 = sol.phi1(0.0) + sol.phi2(0.0), k0 = 3.0 * sol.phi1(0.0) - 5.0 * sol.phi2(0.0);
  for (double x : {0.25, 0.5, 1.0}) {
    EXPECT_NEAR(std::abs((sol.phi1(x) + sol.phi2(x)) / s0 - std::exp(4 * x * x)), 0.0, 1e-9 * std::exp(4 * x * x));
    EXPECT_NEAR(std::abs(3.0 * sol.phi1(x) - 5.0 * sol.phi2(x) - k0), 0.0, 1e-9);
  }
}

TEST(ClosedForm, RankOneMinusSign) {
  CoefficientFn f(RationalFunction::x()), g(Rational(1));
  SolutionEvaluator sol = solve_rank_one(f, g, RankOneSign::minus, 1.0, 0.5, 0.5, {0.0, 1.0});
  LinearSystem sys = rank_one_system(f, g, RankOneSign::minus, {0.0, 1.0});
  EXPECT_LT(rk4_gap(sys, sol, 1.0), 1e-8);
  EXPECT_LT(rk4_gap(sys, sol, 0.0), 1e-8);
}

TEST(ClosedForm, FirstIterationClass) {
  // λ₀ = 1, s₀ = 1, ρ₀ = 0: (λ₀/s₀)' - (λ₀/s₀)ρ₀ = 0 requires ω₀ = 0.
  auto k = [](long v) { return RationalFunction::constant(v); };
  LinearSystem sys = make_exact_system(k(1), k(1), RationalFunction(), RationalFunction(), {0.0, 1.0});
  auto sol = solve_first_iteration(sys, 1.0, 1.0, 0.0);
  ASSERT_TRUE(sol.has_value());
  EXPECT_LT(rk4_gap(sys, *sol, 1.0), 1e-9);
  LinearSystem other = make_exact_system(k(1), k(1), k(1), RationalFunction(), {0.0, 1.0});
  EXPECT_FALSE(solve_first_iteration(other).has_value());
}

TEST(ClosedForm, ConstantsAreLinear) {
  SolutionEvaluator sol = solve_constant(6.0, -1.0, 5.0, 4.0).evaluator(2.0, -1.0, 0.0, {0.0, 0.5});
  for (double x : {0.1, 0.4}) {
    Pair p = sol(x), a = sol.basis(0, x), b = sol.basis(1, x);
    EXPECT_NEAR(std::abs(p[0] - (2.0 * a[0] - b[0])), 0.0, 1e-12);
  }
  SolutionEvaluator other = sol.with_constants(0.0, 1.0);
  EXPECT_NEAR(std::abs(other(0.3)[1] - sol.basis(1, 0.3)[1]), 0.0, 1e-14);
}

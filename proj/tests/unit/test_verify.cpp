#include <gtest/gtest.h>

#include <cmath>

#include "aimlinsys/closed_form.hpp"
#include "aimlinsys/errors.hpp"
#include "aimlinsys/quadrature.hpp"
#include "aimlinsys/verify.hpp"

using namespace aimlinsys;

namespace {

LinearSystem example2() {
  auto k = [](long v) { return RationalFunction::constant(v); };
  return make_exact_system(k(1), k(2), k(3), k(2), {0.0, 1.0});
}

// Closed form written out by hand: (2/5)e^{4x} - e^{-x}, (3/5)e^{4x} + e^{-x}.
Pair example2_exact(double x) {
  return {0.4 * std::exp(4 * x) - std::exp(-x), 0.6 * std::exp(4 * x) + std::exp(-x)};
}

SolutionEvaluator example2_evaluator() {
  BasisFn a = [](double x) { return Pair{0.4 * std::exp(4 * x), 0.6 * std::exp(4 * x)}; };
  BasisFn b = [](double x) { return Pair{-std::exp(-x), std::exp(-x)}; };
  return SolutionEvaluator(a, b, 1.0, 1.0, 0.0, {0.0, 1.0}, SolutionBranch::const_coef);
}

}  // namespace

TEST(Oracle, MatchesExactExponentials) {
  Pair p0 = example2_exact(0.0);
  Trajectory tr = integrate_oracle(example2(), p0[0], p0[1], 0.0, {0.0, 1.0}, {1e-11, 33});
  ASSERT_EQ(tr.points.size(), 33u);
  for (const auto& pt : tr.points) {
    Pair e = example2_exact(pt.x);
    EXPECT_LT(std::abs(pt.phi1 - e[0]) / std::abs(e[0]), 1e-9);
    EXPECT_LT(std::abs(pt.phi2 - e[1]) / std::abs(e[1]), 1e-9);
  }
}

TEST(Oracle, IntegratesBothDirections) {
  Pair p = example2_exact(0.5);
  Trajectory tr = integrate_oracle(example2(), p[0], p[1], 0.5, {0.0, 1.0});
  EXPECT_DOUBLE_EQ(tr.points.front().x, 0.0);
  EXPECT_DOUBLE_EQ(tr.points.back().x, 1.0);
  EXPECT_LT(std::abs(tr.points.front().phi1 - example2_exact(0.0)[0]), 1e-8);
}

TEST(Oracle, ObservedOrder) {
  Pair p0 = example2_exact(0.0);
  std::vector<std::pair<double, long>> runs;
  for (double tol : {1e-6, 1e-8, 1e-10}) {
    Trajectory tr = integrate_oracle(example2(), p0[0], p0[1], 0.0, {0.0, 1.0}, {tol, 2});
    Pair e = example2_exact(1.0);
    double err = std::abs(tr.points.back().phi1 - e[0]) + std::abs(tr.points.back().phi2 - e[1]);
    runs.emplace_back(err, tr.accepted_steps);
  }
  double order = observed_order(runs.front().first, runs.front().second, runs.back().first, runs.back().second);
  EXPECT_GE(order, 4.5);
  EXPECT_LT(order, 7.0);
}

TEST(Oracle, StepUnderflowAtSingularity) {
  LinearSystem sys{CoefficientFn::numeric([](double x) { return Complex(1.0 / ((x - 0.5) * (x - 0.5))); },
                                         [](double x) { return Complex(-2.0 / std::pow(x - 0.5, 3)); }),
                   Rational(0), Rational(0), Rational(0), {0.0, 1.0}};
  EXPECT_THROW(integrate_oracle(sys, 1.0, 1.0, 0.0, {0.0, 1.0}, {1e-10, 5, 100000}), StepUnderflowError);
}

TEST(Verify, ResidualOfExactSolutionIsSmall) {
  VerificationReport r = residual_report(example2(), example2_evaluator());
  EXPECT_TRUE(r.pass);
  EXPECT_LT(std::max(r.max_residual_phi1, r.max_residual_phi2), 1e-9);
}

TEST(Verify, ResidualDetectsWrongSolution) {
  BasisFn a = [](double x) { return Pair{0.4 * std::exp(4 * x), 0.7 * std::exp(4 * x)}; };
  BasisFn b = [](double x) { return Pair{-std::exp(-x), std::exp(-x)}; };
  SolutionEvaluator bad(a, b, 1.0, 1.0, 0.0, {0.0, 1.0}, SolutionBranch::const_coef);
  EXPECT_FALSE(residual_report(example2(), bad).pass);
  EXPECT_FALSE(full_report(example2(), bad).pass);
}

TEST(Verify, FullReportPasses) {
  VerificationReport r = full_report(example2(), example2_evaluator());
  EXPECT_TRUE(r.residual_checked);
  EXPECT_TRUE(r.deviation_checked);
  EXPECT_TRUE(r.pass);
  EXPECT_LT(r.max_deviation, 1e-8);
  EXPECT_NE(r.summary().find("pass"), std::string::npos);
}

TEST(Verify, CompareRejectsMismatchedStart) {
  Pair p0 = example2_exact(0.0);
  Trajectory tr = integrate_oracle(example2(), 1.1 * p0[0], p0[1], 0.0, {0.0, 1.0});
  EXPECT_THROW(compare_solutions(example2_evaluator(), tr), ParameterError);
}

TEST(Verify, CompareDetectsWrongRate) {
  Pair p0 = example2_exact(0.0);
  Trajectory tr = integrate_oracle(example2(), p0[0], p0[1], 0.0, {0.0, 1.0});
  BasisFn a = [](double x) { return Pair{0.4 * std::exp(4.1 * x), 0.6 * std::exp(4.1 * x)}; };
  BasisFn b = [](double x) { return Pair{-std::exp(-x), std::exp(-x)}; };
  SolutionEvaluator wrong(a, b, 1.0, 1.0, 0.0, {0.0, 1.0}, SolutionBranch::const_coef);
  VerificationReport r = compare_solutions(wrong, tr);
  EXPECT_FALSE(r.pass);
  EXPECT_GT(r.max_deviation, 1e-2);
}

TEST(Quadrature, PolynomialAndTranscendental) {
  auto cube = [](double x) { return Complex(x * x * x); };
  EXPECT_NEAR(gauss_legendre8(cube, 0.0, 2.0).real(), 4.0, 1e-13);
  QuadratureResult r = adaptive_simpson([](double x) { return Complex(std::exp(x * x)); }, 0.0, 1.0, 1e-12);
  EXPECT_NEAR(r.value.real(), 1.4626517459071816, 1e-11);
  QuadratureResult s = adaptive_simpson([](double x) { return Complex(std::cos(x), std::sin(x)); }, 0.0, M_PI, 1e-12);
  EXPECT_NEAR(std::abs(s.value - Complex(0, 2)), 0.0, 1e-11);
}

TEST(Quadrature, AntiderivativeFromAnchor) {
  Antiderivative F([](double x) { return Complex(1.0 / x); }, 1.5, {1.0, 3.0});
  for (double x : {1.0, 1.3, 1.5, 2.2, 3.0}) EXPECT_NEAR(std::abs(F(x) - std::log(x / 1.5)), 0.0, 1e-10);
  EXPECT_LT(F.achieved_tolerance(), 1e-9);
}

TEST(Quadrature, ReportsFailureOnSingularIntegrand) {
  EXPECT_THROW(adaptive_simpson([](double x) { return Complex(1.0 / std::abs(x - 0.3)); }, 0.0, 1.0, 1e-12, 20),
               QuadratureError);
}

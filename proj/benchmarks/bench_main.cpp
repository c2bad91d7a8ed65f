#include <benchmark/benchmark.h>

#include <random>

#include "aimlinsys/aim.hpp"
#include "aimlinsys/closed_form.hpp"
#include "aimlinsys/expression.hpp"
#include "aimlinsys/polynomial.hpp"
#include "aimlinsys/verify.hpp"

using namespace aimlinsys;

namespace {

Polynomial random_poly(std::mt19937& rng, int degree) {
  std::uniform_int_distribution<int> c(-20, 20);
  std::vector<Rational> v;
  for (int i = 0; i <= degree; ++i) v.emplace_back(c(rng), 1 + std::abs(c(rng)));
  return Polynomial(v);
}

void BM_PolynomialGcd(benchmark::State& state) {
  std::mt19937 rng(1);
  int d = static_cast<int>(state.range(0));
  Polynomial common = random_poly(rng, d / 2);
  Polynomial a = random_poly(rng, d) * common, b = random_poly(rng, d) * common;
  for (auto _ : state) benchmark::DoNotOptimize(gcd(a, b));
}
BENCHMARK(BM_PolynomialGcd)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

void BM_AimIterate(benchmark::State& state) {
  auto ox = [](long c) { return RationalFunction(Polynomial::constant(c), Polynomial::x()); };
  LinearSystem sys = make_exact_system(ox(2), ox(1), ox(3), ox(-2), {1.0, 2.0});
  int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(aim_iterate(sys, n));
}
BENCHMARK(BM_AimIterate)->Arg(5)->Arg(10)->Arg(20);

void BM_AimIteratePolynomial(benchmark::State& state) {
  auto x = RationalFunction::x();
  auto one = RationalFunction::constant(1);
  LinearSystem sys = make_exact_system(x, one, one, RationalFunction(), {0.0, 1.0});
  int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(aim_iterate(sys, n));
}
BENCHMARK(BM_AimIteratePolynomial)->Arg(5)->Arg(10)->Arg(20);

void BM_Oracle(benchmark::State& state) {
  auto k = [](long v) { return RationalFunction::constant(v); };
  LinearSystem sys = make_exact_system(k(1), k(2), k(3), k(2), {0.0, 1.0});
  double tol = std::pow(10.0, -static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(integrate_oracle(sys, -0.6, 1.6, 0.0, sys.domain, {tol, 33}));
}
BENCHMARK(BM_Oracle)->Arg(6)->Arg(8)->Arg(10)->Arg(12);

void BM_ClosedFormFromAlpha(benchmark::State& state) {
  auto ox = [](const Rational& c) { return RationalFunction(Polynomial::constant(c), Polynomial::x()); };
  LinearSystem sys = make_exact_system(ox(-3), ox(1), ox(2), ox(Rational(1, 2)), {1.0, 2.0});
  AlphaFunction a{CoefficientFn(Rational(-1, 4)), Provenance::aim, "", std::nullopt};
  for (auto _ : state) {
    SolutionEvaluator sol = build_solution_from_alpha(sys, a, 1.0, 1.0, 1.5);
    benchmark::DoNotOptimize(sol(1.9));
  }
}
BENCHMARK(BM_ClosedFormFromAlpha);

void BM_ParseExpression(benchmark::State& state) {
  const std::string text = "((-2n+1)x - c)/(x(1-x)) + a^2/x^3 - 3.25e-1*x^4";
  std::map<std::string, Rational> p{{"n", 2}, {"c", Rational(1, 2)}, {"a", 3}};
  for (auto _ : state) benchmark::DoNotOptimize(to_rational_function(parse_expression(text), p));
}
BENCHMARK(BM_ParseExpression);

}  // namespace
BENCHMARK_MAIN();

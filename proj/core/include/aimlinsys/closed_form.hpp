#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>

#include "aimlinsys/coefficient.hpp"
#include "aimlinsys/numeric.hpp"

namespace aimlinsys {

enum class Provenance { aim, riccati_separable, fg_ratio, table, user };

/// α (or β) for the quadrature formulas. `valid` narrows the domain when the
/// closed form has singularities inside the requested one.
struct AlphaFunction {
  CoefficientFn fn;
  Provenance provenance = Provenance::user;
  std::string description;
  std::optional<Domain> valid;
};

enum class SolutionBranch { alpha, beta, const_coef, first_iteration, corollary, triangular };

using Pair = std::array<Complex, 2>;
using BasisFn = std::function<Pair(double)>;

/// (φ₁, φ₂) = C1·basis₁(x) + C2·basis₂(x), every integral inside taken from x0.
class SolutionEvaluator {
 public:
  SolutionEvaluator(BasisFn first, BasisFn second, Complex C1, Complex C2, double x0, Domain domain,
                    SolutionBranch branch);

  Pair operator()(double x) const;
  Complex phi1(double x) const { return (*this)(x)[0]; }
  Complex phi2(double x) const { return (*this)(x)[1]; }
  /// k = 0 is (C1, C2) = (1, 0); k = 1 is (0, 1).
  Pair basis(int k, double x) const;
  SolutionEvaluator with_constants(Complex C1, Complex C2) const;

  Complex C1() const { return c1_; }
  Complex C2() const { return c2_; }
  double anchor() const { return x0_; }
  const Domain& domain() const { return domain_; }
  SolutionBranch branch() const { return branch_; }

  std::string note;

 private:
  BasisFn first_, second_;
  Complex c1_, c2_;
  double x0_;
  Domain domain_;
  SolutionBranch branch_;
};

struct ConstCoefSolution {
  Complex alpha_plus;
  Complex alpha_minus;
  /// The root the solution is built from.
  Complex alpha;
  /// (λ₀ + αω₀, ρ₀ - αω₀).
  std::array<Complex, 2> exponents;
  /// Equal exponents with ω₀ ≠ 0: the second mode is (x - x0)·e^{r(x-x0)}.
  bool repeated = false;
  /// coefficients[i][j] = (coefficient of C1, coefficient of C2) in φᵢ₊₁ for mode j.
  std::array<std::array<std::array<Complex, 2>, 2>, 2> coefficients{};

  SolutionEvaluator evaluator(Complex C1, Complex C2, double x0, const Domain& d) const;
};

/// The two-exponential solution with modes e^{r(x-x0)}. `root` 0 picks the '+'
/// branch, 1 the '-' branch.
ConstCoefSolution solve_constant(Complex lam, Complex s, Complex om, Complex rho, int root = 0);

/// ω₀ = 0, λ₀ = ρ₀: φ₂ = C2e^{λx'}, φ₁ = (C1 + s·C2·x')e^{λx'} with x' = x - x0.
SolutionEvaluator solve_triangular(Complex lam, Complex s, Complex C1, Complex C2, double x0, const Domain& d);

SolutionEvaluator build_solution_from_alpha(const LinearSystem& system, const AlphaFunction& alpha, Complex C1,
                                            Complex C2, double x0);
SolutionEvaluator build_solution_from_beta(const LinearSystem& system, const AlphaFunction& beta, Complex C1p,
                                           Complex C2p, double x0);

/// Checks (λ₀/s₀)' - (λ₀/s₀)ρ₀ = -ω₀ and returns the matching solution.
std::optional<SolutionEvaluator> solve_first_iteration(const LinearSystem& system, Complex C1 = 1.0,
                                                       Complex C2 = 1.0, std::optional<double> x0 = std::nullopt);

enum class RankOneSign { plus, minus };

/// λ₀ = f, s₀ = ±f, ω₀ = g, ρ₀ = ±g.
LinearSystem rank_one_system(const CoefficientFn& f, const CoefficientFn& g, RankOneSign sign, const Domain& d);
SolutionEvaluator solve_rank_one(const CoefficientFn& f, const CoefficientFn& g, RankOneSign sign, Complex C1,
                                 Complex C2, double x0, const Domain& d);

/// Domain with a small margin on both sides, for derivatives taken at the ends.
Domain evaluation_domain(const Domain& d);

std::string to_string(SolutionBranch b);
std::string to_string(Provenance p);

}  // namespace aimlinsys

#pragma once

#include <optional>
#include <string>

#include "aimlinsys/aim.hpp"
#include "aimlinsys/closed_form.hpp"
#include "aimlinsys/riccati.hpp"

namespace aimlinsys {

struct SolveOptions {
  std::optional<double> anchor;
  int n_max = kDefaultNmax;
  /// "auto" or one of corollary, const-coef, aim-alpha, aim-beta, first-iteration,
  /// separable, user-alpha.
  std::string path = "auto";
  /// α supplied by the caller; "auto" tries it first.
  std::optional<CoefficientFn> user_alpha;
  Complex C1 = 1.0;
  Complex C2 = 1.0;
  PolePolicy poles = PolePolicy::restrict;
};

struct SolvedSystem {
  SolutionEvaluator solution;
  std::string path;
  std::string alpha_text;
  std::optional<TerminationCertificate> certificate;
  std::optional<ConstCoefSolution> constant;
  std::optional<SeparabilityClass> separability;
};

/// Tries, in order: rank-one corollary pattern, constant coefficients, AIM
/// termination (alpha then beta), the first-iteration class, separable Riccati.
std::optional<SolvedSystem> solve_system(const LinearSystem& system, const SolveOptions& opt = {});

/// Sign of the rank-one pattern s₀ = ±λ₀, ρ₀ = ±ω₀, if the system has it.
std::optional<RankOneSign> rank_one_pattern(const LinearSystem& system);

/// Both roots of ω₀α² + (λ₀-ρ₀)α - s₀ = 0 in exact form, '+' root first,
/// e.g. "(-1+2i)/5".
std::array<std::string, 2> constant_alpha_text(const Rational& lam, const Rational& s, const Rational& om,
                                               const Rational& rho);

bool same_values(const CoefficientFn& a, const CoefficientFn& b, const Domain& d);

}  // namespace aimlinsys

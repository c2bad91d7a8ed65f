#pragma once

#include <optional>
#include <string>
#include <utility>

#include "aimlinsys/aim.hpp"
#include "aimlinsys/closed_form.hpp"
#include "aimlinsys/coefficient.hpp"

namespace aimlinsys {

/// α' - ω₀α² - (λ₀-ρ₀)α + s₀; exact when every input is exact.
CoefficientFn riccati_residual(const LinearSystem& system, const AlphaFunction& alpha);

/// Largest pointwise residual on `points` uniform samples, each scaled by
/// 1 + |α'| + |ω₀α²| + |(λ₀-ρ₀)α| + |s₀|.
double max_riccati_residual(const LinearSystem& system, const AlphaFunction& alpha, const Domain& d,
                            int points = 64);

/// ω₀ = A·h, λ₀ - ρ₀ = B·h, s₀ = C·h with constant A, B, C, so that
/// α' = h(Aα² + Bα - C) separates.
struct SeparabilityClass {
  enum class Kind { single, both_ratios, none };

  Kind kind = Kind::none;
  Complex A{}, B{}, C{};
  CoefficientFn h;
  /// (ρ₀-λ₀)/s₀ for the single class; ω₀/(ρ₀-λ₀) and s₀/(ρ₀-λ₀) for both-ratios
  /// when ρ₀ - λ₀ is not identically zero.
  std::optional<Complex> rho_minus_lambda_over_s;
  std::optional<Complex> omega_over_rho_minus_lambda;
  std::optional<Complex> s_over_rho_minus_lambda;
  std::string detail;
};

SeparabilityClass detect_separable(const LinearSystem& system);

enum class PolePolicy { restrict, reject };

/// α with α(x0) = 0 solving the separated equation. When α has a pole in the
/// domain, `restrict` narrows AlphaFunction::valid to the pole-free piece
/// around x0 and `reject` throws DomainRestrictionError.
AlphaFunction solve_separable(const LinearSystem& system, const SeparabilityClass& cls, double x0,
                              PolePolicy policy = PolePolicy::restrict);

enum class FGDirection { forward, dual };

struct FGSpec {
  CoefficientFn F0;
  CoefficientFn G0;
  CoefficientFn lambda0;
  CoefficientFn rho0;
  FGDirection direction = FGDirection::forward;
  Domain domain;
  std::optional<double> anchor;
};

/// Forward: s₀ = G₀e^{-W}, ω₀ = e^{W}, α = (Gₙ₋₁/Fₙ₋₁)e^{-W}, W = ∫ₓ₀(F₀+ρ₀-λ₀).
/// Dual: s₀ = e^{V}, ω₀ = G₀e^{-V}, α = s₀Fₙ₋₁/Gₙ₋₁, V = ∫ₓ₀(F₀-ρ₀+λ₀).
std::pair<LinearSystem, AlphaFunction> alpha_from_fg(const FGSpec& spec, int n);

std::string to_string(SeparabilityClass::Kind k);

}  // namespace aimlinsys

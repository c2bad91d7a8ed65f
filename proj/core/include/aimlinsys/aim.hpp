#pragma once

#include <optional>
#include <string>
#include <vector>

#include "aimlinsys/coefficient.hpp"
#include "aimlinsys/rational_function.hpp"

namespace aimlinsys {

struct AimLevel {
  RationalFunction lambda, s, omega, rho;
};

/// Iterates n = 0..N with their termination functionals. deltas[n] and
/// Deltas[n] hold δₙ and Δₙ for n ≥ 1; entry 0 is zero and unused.
struct AimState {
  std::vector<AimLevel> iterates;
  std::vector<RationalFunction> deltas;
  std::vector<RationalFunction> Deltas;
  std::vector<RationalFunction> etas;

  int depth() const { return static_cast<int>(iterates.size()) - 1; }
};

/// Incremental form of the recursion, one level per step().
class AimIterator {
 public:
  explicit AimIterator(const LinearSystem& system);
  void step();
  const AimState& state() const { return state_; }

 private:
  RationalFunction l0_, s0_, w0_, r0_;
  AimState state_;
};

constexpr int kDefaultNmax = 30;

AimState aim_iterate(const LinearSystem& system, int n_max);

/// δₙ from the recursion against -(b/x^{2n+1}) ∏_{m<n} (m² - m(a+d) + ad - bc)
/// for λ₀ = a/x, s₀ = b/x, ω₀ = c/x, ρ₀ = d/x.
bool delta_formula_check(const Rational& a, const Rational& b, const Rational& c, const Rational& d, int n);
RationalFunction delta_product_formula(const Rational& a, const Rational& b, const Rational& c, const Rational& d,
                                       int n);

enum class RatioKind { alpha, beta };
enum class Branch { alpha, beta, both };

/// kind=alpha: δₙ₊₁ ≡ 0 and ratio = sₙ/λₙ. kind=beta: Δₙ₊₁ ≡ 0 and ratio = ωₙ/ρₙ.
/// Constant systems can also be certified by a rational fixed point of the
/// Riccati quadratic, in which case `source` says so and n is 0.
struct TerminationCertificate {
  enum class Source { iteration, constant_fixed_point };

  int n = 0;
  RatioKind kind = RatioKind::alpha;
  RationalFunction ratio;
  Source source = Source::iteration;
};

std::optional<TerminationCertificate> find_termination(const LinearSystem& system, int n_max = kDefaultNmax,
                                                       Branch branch = Branch::both);

/// Rational roots of ω₀α² + (λ₀-ρ₀)α - s₀ = 0 for constant systems, '+' root first.
std::vector<Rational> rational_fixed_points(const LinearSystem& system, RatioKind kind);

RationalFunction eta(const LinearSystem& system, int n);

/// Fₙ, Gₙ and δₙ = FₙGₙ₋₁ - Fₙ₋₁Gₙ for n = 0..N (δ₀ unused).
struct FGState {
  std::vector<RationalFunction> F;
  std::vector<RationalFunction> G;
  std::vector<RationalFunction> fg_deltas;
};

FGState fg_iterate(const CoefficientFn& F0, const CoefficientFn& G0, int n_max);

std::string to_string(RatioKind k);
std::string to_string(TerminationCertificate::Source s);

}  // namespace aimlinsys

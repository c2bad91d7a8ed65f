#pragma once

#include <functional>
#include <memory>
#include <string>

#include "aimlinsys/numeric.hpp"
#include "aimlinsys/rational_function.hpp"

namespace aimlinsys {

/// Value with its first two derivatives. Unknown derivatives are NaN.
struct Jet {
  Complex v{};
  Complex d1{};
  Complex d2{};
};

using JetFn = std::function<Jet(double)>;

/// A coefficient of the system: an exact rational function, a complex
/// constant, or a numeric evaluator that supplies value and derivative.
class CoefficientFn {
 public:
  enum class Kind { exact, constant, numeric };

  CoefficientFn() : CoefficientFn(RationalFunction()) {}
  CoefficientFn(RationalFunction f);  // NOLINT(google-explicit-constructor)
  CoefficientFn(const Rational& c) : CoefficientFn(RationalFunction::constant(c)) {}  // NOLINT
  static CoefficientFn constant(Complex c);
  /// Numeric coefficient; the second derivative is estimated by central differences.
  static CoefficientFn numeric(ScalarFn value, ScalarFn derivative, std::string label = "f");
  static CoefficientFn from_jet(JetFn jet, std::string label = "f");

  Kind kind() const { return kind_; }
  bool is_exact() const { return kind_ == Kind::exact; }
  /// Throws ParameterError unless exact.
  const RationalFunction& exact() const;
  Complex constant_value() const { return constant_; }

  Complex operator()(double x) const;
  Complex derivative(double x) const;
  Jet jet(double x) const;

  /// Derivative as a coefficient; exact stays exact.
  CoefficientFn diff() const;
  /// True when the coefficient is the zero function (exact or constant kinds only).
  bool is_identically_zero() const;
  /// Exact constant or constant kind.
  bool is_constant() const;

  const std::string& label() const { return label_; }
  std::string to_string() const;

  friend CoefficientFn operator+(const CoefficientFn& a, const CoefficientFn& b);
  friend CoefficientFn operator-(const CoefficientFn& a, const CoefficientFn& b);
  friend CoefficientFn operator*(const CoefficientFn& a, const CoefficientFn& b);
  friend CoefficientFn operator/(const CoefficientFn& a, const CoefficientFn& b);
  CoefficientFn operator-() const;

 private:
  struct ExactCache {
    RationalFunction f, f1, f2;
  };

  Kind kind_ = Kind::exact;
  std::shared_ptr<const ExactCache> exact_;
  Complex constant_{};
  JetFn jet_;
  std::string label_;
};

CoefficientFn exp(const CoefficientFn& f);

/// Antiderivative ∫ₓ₀ˣ f over `d`, tabulated by quadrature.
CoefficientFn integral(const CoefficientFn& f, double x0, const Domain& d);

Jet operator+(const Jet& a, const Jet& b);
Jet operator-(const Jet& a, const Jet& b);
Jet operator*(const Jet& a, const Jet& b);
Jet operator/(const Jet& a, const Jet& b);

/// The coefficients of φ₁′ = λ₀φ₁ + s₀φ₂, φ₂′ = ω₀φ₁ + ρ₀φ₂ on a real interval.
struct LinearSystem {
  CoefficientFn lambda0;
  CoefficientFn s0;
  CoefficientFn omega0;
  CoefficientFn rho0;
  Domain domain;

  bool is_exact() const;
  bool is_constant() const;
  /// Exact mode: no coefficient pole in the domain. Numeric mode: finite samples.
  void validate() const;
  /// The relabelled system with (φ₁, λ₀, s₀) exchanged with (φ₂, ρ₀, ω₀).
  LinearSystem swapped() const;
};

LinearSystem make_exact_system(const RationalFunction& lambda0, const RationalFunction& s0,
                               const RationalFunction& omega0, const RationalFunction& rho0, const Domain& d);

}  // namespace aimlinsys

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "aimlinsys/numeric.hpp"
#include "aimlinsys/rational.hpp"

namespace aimlinsys {

/// Dense univariate polynomial over the rationals, constant term first.
/// The coefficient vector never carries trailing zeros; the zero polynomial
/// has no coefficients.
class Polynomial {
 public:
  /// Intermediate results above this degree raise ResourceError.
  static constexpr int kMaxDegree = 512;

  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coefficients);

  static Polynomial constant(const Rational& c);
  static Polynomial x();
  static Polynomial monomial(const Rational& c, int power);

  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const { return coeffs_.size() <= 1; }
  bool is_monomial() const;
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Rational>& coefficients() const { return coeffs_; }
  /// Coefficient of x^k; zero beyond the degree.
  Rational coefficient(int k) const;
  const Rational& leading() const;
  /// Index of the lowest nonzero coefficient (multiplicity of the root 0).
  int low_order() const;

  Polynomial derivative() const;
  Polynomial compose(const Polynomial& inner) const;
  Polynomial monic() const;
  Polynomial pow(unsigned exponent) const;
  /// Divides by x^k; requires k <= low_order().
  Polynomial shift_down(int k) const;

  Rational eval(const Rational& x) const;
  double eval(double x) const;
  Complex eval(Complex x) const;
  std::vector<double> to_doubles() const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  Polynomial& operator*=(const Rational& c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Polynomial& b) { return a *= b; }
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

  std::string to_string(std::string_view var = "x") const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

/// Euclidean division over Q: a = q*b + r with deg r < deg b.
std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b);

/// Exact quotient; the caller guarantees b divides a.
Polynomial exact_quotient(const Polynomial& a, const Polynomial& b);

/// Monic greatest common divisor (zero only when both inputs are zero).
/// Computed by a primitive pseudo-remainder sequence over the integers.
Polynomial gcd(const Polynomial& a, const Polynomial& b);

void check_degree_guard(int degree);

}  // namespace aimlinsys

#pragma once

#include <string>
#include <string_view>

#include "aimlinsys/numeric.hpp"
#include "aimlinsys/polynomial.hpp"
#include "aimlinsys/rational.hpp"

namespace aimlinsys {

/// Exact quotient of polynomials in canonical form: gcd(num, den) = 1, the
/// denominator is monic, and the sign lives in the numerator. Zero is 0/1.
/// Canonical form makes equality and zero testing structural.
class RationalFunction {
 public:
  RationalFunction() : den_(Polynomial::constant(1)) {}
  RationalFunction(Polynomial num);  // NOLINT(google-explicit-constructor)
  RationalFunction(Polynomial num, Polynomial den);

  static RationalFunction constant(const Rational& c) { return RationalFunction(Polynomial::constant(c)); }
  static RationalFunction x() { return RationalFunction(Polynomial::x()); }

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  /// Value of a constant function; requires is_constant().
  Rational constant_value() const;

  RationalFunction derivative() const;
  RationalFunction pow(int exponent) const;

  Rational eval(const Rational& x) const;
  double eval(double x) const;
  Complex eval(Complex x) const;

  RationalFunction operator-() const;
  RationalFunction& operator+=(const RationalFunction& o);
  RationalFunction& operator-=(const RationalFunction& o);
  RationalFunction& operator*=(const RationalFunction& o);
  RationalFunction& operator/=(const RationalFunction& o);

  friend RationalFunction operator+(RationalFunction a, const RationalFunction& b) { return a += b; }
  friend RationalFunction operator-(RationalFunction a, const RationalFunction& b) { return a -= b; }
  friend RationalFunction operator*(RationalFunction a, const RationalFunction& b) { return a *= b; }
  friend RationalFunction operator/(RationalFunction a, const RationalFunction& b) { return a /= b; }
  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  std::string to_string(std::string_view var = "x") const;

 private:
  struct Canonical {};
  RationalFunction(Polynomial num, Polynomial den, Canonical) : num_(std::move(num)), den_(std::move(den)) {}

  Polynomial num_;
  Polynomial den_;
};

enum class ArithOp { add, sub, mul, div };

/// Canonical reduced form of num/den; throws DivisionByZeroError for a zero
/// denominator.
RationalFunction normalize(const Polynomial& num, const Polynomial& den);

RationalFunction arith(const RationalFunction& a, const RationalFunction& b, ArithOp op);

inline bool is_zero(const RationalFunction& f) { return f.is_zero(); }

/// p(inner(x)) for a polynomial p and rational inner argument.
RationalFunction compose(const Polynomial& outer, const RationalFunction& inner);

}  // namespace aimlinsys

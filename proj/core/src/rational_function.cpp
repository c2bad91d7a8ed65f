#include "aimlinsys/rational_function.hpp"

#include <cmath>
#include <sstream>

#include "aimlinsys/errors.hpp"

namespace aimlinsys {

RationalFunction normalize(const Polynomial& num, const Polynomial& den) { return RationalFunction(num, den); }

RationalFunction::RationalFunction(Polynomial num) : num_(std::move(num)), den_(Polynomial::constant(1)) {}

RationalFunction::RationalFunction(Polynomial num, Polynomial den) {
  if (den.is_zero()) throw DivisionByZeroError("division by zero polynomial");
  if (num.is_zero()) {
    num_ = Polynomial();
    den_ = Polynomial::constant(1);
    return;
  }
  Polynomial g = gcd(num, den);
  if (!g.is_constant()) {
    num = exact_quotient(num, g);
    den = exact_quotient(den, g);
  }
  Rational lead = den.leading();
  if (lead != 1) {
    Rational inv = 1 / lead;
    num *= inv;
    den *= inv;
  }
  num_ = std::move(num);
  den_ = std::move(den);
}

Rational RationalFunction::constant_value() const {
  if (!is_constant()) throw ParameterError("rational function is not constant: " + to_string());
  return num_.coefficient(0);
}

RationalFunction RationalFunction::derivative() const {
  if (num_.is_constant() && den_.is_constant()) return {};
  if (den_.is_constant()) return RationalFunction(num_.derivative(), Polynomial::constant(1), Canonical{});

  Polynomial top = num_.derivative() * den_ - num_ * den_.derivative();
  return RationalFunction(std::move(top), den_ * den_);
}

RationalFunction RationalFunction::pow(int exponent) const {
  if (exponent == 0) return constant(1);
  if (exponent < 0) {
    if (is_zero()) throw DivisionByZeroError("negative power of the zero rational function");
    return RationalFunction(den_.pow(static_cast<unsigned>(-exponent)), num_.pow(static_cast<unsigned>(-exponent)));
  }

  return RationalFunction(num_.pow(static_cast<unsigned>(exponent)), den_.pow(static_cast<unsigned>(exponent)),
                          Canonical{});
}

namespace {

std::string pole_message(double where) {
  std::ostringstream os;
  os.precision(17);
  os << "evaluation at a pole: denominator vanishes at x = " << where;
  return os.str();
}

}  // namespace

Rational RationalFunction::eval(const Rational& x) const {
  Rational d = den_.eval(x);
  if (d == 0) throw PoleError(pole_message(x.get_d()), x.get_d());
  Rational out = num_.eval(x) / d;
  out.canonicalize();
  return out;
}

double RationalFunction::eval(double x) const {
  double d = den_.eval(x);
  if (d == 0.0) throw PoleError(pole_message(x), x);
  return num_.eval(x) / d;
}

Complex RationalFunction::eval(Complex x) const {
  Complex d = den_.eval(x);
  if (d == Complex(0.0)) throw PoleError(pole_message(x.real()), x.real());
  return num_.eval(x) / d;
}

RationalFunction RationalFunction::operator-() const { return RationalFunction(-num_, den_, Canonical{}); }

RationalFunction& RationalFunction::operator+=(const RationalFunction& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_ == o.den_) return *this = RationalFunction(num_ + o.num_, den_);
  Polynomial g = gcd(den_, o.den_);
  if (g.is_constant()) return *this = RationalFunction(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
  Polynomial d1 = exact_quotient(den_, g);
  Polynomial d2 = exact_quotient(o.den_, g);
  return *this = RationalFunction(num_ * d2 + o.num_ * d1, d1 * o.den_);
}

RationalFunction& RationalFunction::operator-=(const RationalFunction& o) { return *this += -o; }

RationalFunction& RationalFunction::operator*=(const RationalFunction& o) {
  if (is_zero() || o.is_zero()) return *this = RationalFunction();

  Polynomial g1 = gcd(num_, o.den_);
  Polynomial g2 = gcd(o.num_, den_);
  Polynomial n1 = g1.is_constant() ? num_ : exact_quotient(num_, g1);
  Polynomial d2 = g1.is_constant() ? o.den_ : exact_quotient(o.den_, g1);
  Polynomial n2 = g2.is_constant() ? o.num_ : exact_quotient(o.num_, g2);
  Polynomial d1 = g2.is_constant() ? den_ : exact_quotient(den_, g2);
  Polynomial n = n1 * n2;
  Polynomial d = d1 * d2;
  Rational inv = 1 / d.leading();
  n *= inv;
  d *= inv;
  return *this = RationalFunction(std::move(n), std::move(d), Canonical{});
}

RationalFunction& RationalFunction::operator/=(const RationalFunction& o) {
  if (o.is_zero()) throw DivisionByZeroError("division by the zero rational function");
  return *this *= RationalFunction(o.den_, o.num_);
}

std::string RationalFunction::to_string(std::string_view var) const {
  if (den_.is_constant()) return num_.to_string(var);
  auto wrap = [&](const Polynomial& p) {
    std::string s = p.to_string(var);
    bool single = p.is_monomial() && (p.leading() == 1 || p.degree() == 0);
    return single ? s : "(" + s + ")";
  };
  return wrap(num_) + "/" + wrap(den_);
}

RationalFunction arith(const RationalFunction& a, const RationalFunction& b, ArithOp op) {
  switch (op) {
    case ArithOp::add:
      return a + b;
    case ArithOp::sub:
      return a - b;
    case ArithOp::mul:
      return a * b;
    case ArithOp::div:
      return a / b;
  }
  throw ParameterError("unknown arithmetic operation");
}

RationalFunction compose(const Polynomial& outer, const RationalFunction& inner) {
  if (outer.is_zero()) return {};
  if (inner.is_polynomial()) return RationalFunction(outer.compose(inner.num() * (1 / inner.den().leading())));
  const auto& c = outer.coefficients();
  RationalFunction acc = RationalFunction::constant(c.back());
  for (std::size_t i = c.size() - 1; i-- > 0;) {
    acc *= inner;
    acc += RationalFunction::constant(c[i]);
  }
  return acc;
}

}  // namespace aimlinsys

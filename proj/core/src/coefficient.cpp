#include "aimlinsys/coefficient.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "aimlinsys/errors.hpp"
#include "aimlinsys/quadrature.hpp"
#include "aimlinsys/roots.hpp"

namespace aimlinsys {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string complex_text(Complex c) {
  std::ostringstream os;
  os.precision(17);
  if (c.imag() == 0.0) {
    os << c.real();
  } else {
    os << "(" << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i)";
  }
  return os.str();
}

}  // namespace

Jet operator+(const Jet& a, const Jet& b) { return {a.v + b.v, a.d1 + b.d1, a.d2 + b.d2}; }
Jet operator-(const Jet& a, const Jet& b) { return {a.v - b.v, a.d1 - b.d1, a.d2 - b.d2}; }
Jet operator*(const Jet& a, const Jet& b) {
  return {a.v * b.v, a.d1 * b.v + a.v * b.d1, a.d2 * b.v + 2.0 * a.d1 * b.d1 + a.v * b.d2};
}
Jet operator/(const Jet& a, const Jet& b) {
  Complex q = a.v / b.v;
  Complex q1 = (a.d1 - q * b.d1) / b.v;
  Complex q2 = (a.d2 - 2.0 * q1 * b.d1 - q * b.d2) / b.v;
  return {q, q1, q2};
}

CoefficientFn::CoefficientFn(RationalFunction f) : kind_(Kind::exact) {
  auto cache = std::make_shared<ExactCache>();
  cache->f1 = f.derivative();
  cache->f2 = cache->f1.derivative();
  cache->f = std::move(f);
  exact_ = std::move(cache);
}

CoefficientFn CoefficientFn::constant(Complex c) {
  CoefficientFn out;
  out.kind_ = Kind::constant;
  out.exact_.reset();
  out.constant_ = c;
  return out;
}

CoefficientFn CoefficientFn::numeric(ScalarFn value, ScalarFn derivative, std::string label) {
  auto jet = [value = std::move(value), derivative = std::move(derivative)](double x) {
    double h = 1e-5 * std::max(1.0, std::abs(x));
    Complex d2 = (derivative(x + h) - derivative(x - h)) / (2.0 * h);
    return Jet{value(x), derivative(x), d2};
  };
  return from_jet(std::move(jet), std::move(label));
}

CoefficientFn CoefficientFn::from_jet(JetFn jet, std::string label) {
  CoefficientFn out;
  out.kind_ = Kind::numeric;
  out.exact_.reset();
  out.jet_ = std::move(jet);
  out.label_ = std::move(label);
  return out;
}

const RationalFunction& CoefficientFn::exact() const {
  if (kind_ != Kind::exact) throw ParameterError("coefficient is not exact: " + to_string());
  return exact_->f;
}

Jet CoefficientFn::jet(double x) const {
  switch (kind_) {
    case Kind::exact:
      return {exact_->f.eval(x), exact_->f1.eval(x), exact_->f2.eval(x)};
    case Kind::constant:
      return {constant_, 0.0, 0.0};
    case Kind::numeric:
      return jet_(x);
  }
  return {};
}

Complex CoefficientFn::operator()(double x) const {
  switch (kind_) {
    case Kind::exact:
      return exact_->f.eval(x);
    case Kind::constant:
      return constant_;
    case Kind::numeric:
      return jet_(x).v;
  }
  return {};
}

Complex CoefficientFn::derivative(double x) const {
  switch (kind_) {
    case Kind::exact:
      return exact_->f1.eval(x);
    case Kind::constant:
      return 0.0;
    case Kind::numeric:
      return jet_(x).d1;
  }
  return {};
}

CoefficientFn CoefficientFn::diff() const {
  switch (kind_) {
    case Kind::exact:
      return CoefficientFn(exact_->f1);
    case Kind::constant:
      return CoefficientFn();
    case Kind::numeric:
      break;
  }
  auto inner = jet_;
  return from_jet([inner](double x) {
    Jet j = inner(x);
    return Jet{j.d1, j.d2, kNaN};
  }, label_ + "'");
}

bool CoefficientFn::is_identically_zero() const {
  if (kind_ == Kind::exact) return exact_->f.is_zero();
  if (kind_ == Kind::constant) return constant_ == Complex(0.0);
  return false;
}

bool CoefficientFn::is_constant() const {
  if (kind_ == Kind::exact) return exact_->f.is_constant();
  return kind_ == Kind::constant;
}

std::string CoefficientFn::to_string() const {
  switch (kind_) {
    case Kind::exact:
      return exact_->f.to_string();
    case Kind::constant:
      return complex_text(constant_);
    case Kind::numeric:
      return label_;
  }
  return {};
}

namespace {

template <class ExactOp, class JetOp>
CoefficientFn combine(const CoefficientFn& a, const CoefficientFn& b, ExactOp exact_op, JetOp jet_op,
                      const char* sym) {
  using K = CoefficientFn::Kind;
  if (a.kind() == K::exact && b.kind() == K::exact) return CoefficientFn(exact_op(a.exact(), b.exact()));
  if (a.kind() != K::numeric && b.kind() != K::numeric) {
    Jet ja = a.jet(0.0);
    Jet jb = b.jet(0.0);
    if (a.is_constant() && b.is_constant()) return CoefficientFn::constant(jet_op(ja, jb).v);
  }
  std::string label = "(" + a.to_string() + ")" + sym + "(" + b.to_string() + ")";
  return CoefficientFn::from_jet([a, b, jet_op](double x) { return jet_op(a.jet(x), b.jet(x)); }, label);
}

}  // namespace

CoefficientFn operator+(const CoefficientFn& a, const CoefficientFn& b) {
  if (b.is_identically_zero()) return a;
  if (a.is_identically_zero()) return b;
  return combine(
      a, b, [](const RationalFunction& p, const RationalFunction& q) { return p + q; },
      [](const Jet& p, const Jet& q) { return p + q; }, "+");
}

CoefficientFn operator-(const CoefficientFn& a, const CoefficientFn& b) {
  if (b.is_identically_zero()) return a;
  return combine(
      a, b, [](const RationalFunction& p, const RationalFunction& q) { return p - q; },
      [](const Jet& p, const Jet& q) { return p - q; }, "-");
}

CoefficientFn operator*(const CoefficientFn& a, const CoefficientFn& b) {
  if (a.is_identically_zero() || b.is_identically_zero()) return CoefficientFn();
  return combine(
      a, b, [](const RationalFunction& p, const RationalFunction& q) { return p * q; },
      [](const Jet& p, const Jet& q) { return p * q; }, "*");
}

CoefficientFn operator/(const CoefficientFn& a, const CoefficientFn& b) {
  if (b.is_identically_zero()) throw DivisionByZeroError("division by the zero coefficient function");
  return combine(
      a, b, [](const RationalFunction& p, const RationalFunction& q) { return p / q; },
      [](const Jet& p, const Jet& q) { return p / q; }, "/");
}

CoefficientFn CoefficientFn::operator-() const { return CoefficientFn() - *this; }

CoefficientFn exp(const CoefficientFn& f) {
  if (f.is_identically_zero()) return CoefficientFn(Rational(1));
  if (f.kind() == CoefficientFn::Kind::constant) return CoefficientFn::constant(std::exp(f.constant_value()));
  return CoefficientFn::from_jet([f](double x) {
    Jet j = f.jet(x);
    Complex e = std::exp(j.v);
    return Jet{e, e * j.d1, e * (j.d2 + j.d1 * j.d1)};
  }, "exp(" + f.to_string() + ")");
}

CoefficientFn integral(const CoefficientFn& f, double x0, const Domain& d) {
  if (f.is_identically_zero()) return CoefficientFn();
  auto anti = std::make_shared<Antiderivative>([f](double t) { return f(t); }, x0, d);
  return CoefficientFn::from_jet([f, anti](double x) {
    Jet j = f.jet(x);
    return Jet{(*anti)(x), j.v, j.d1};
  }, "int(" + f.to_string() + ")");
}

bool LinearSystem::is_exact() const {
  return lambda0.is_exact() && s0.is_exact() && omega0.is_exact() && rho0.is_exact();
}

bool LinearSystem::is_constant() const {
  return lambda0.is_constant() && s0.is_constant() && omega0.is_constant() && rho0.is_constant();
}

void LinearSystem::validate() const {
  if (!(domain.lo < domain.hi)) throw ParameterError("domain requires lo < hi");
  const CoefficientFn* all[] = {&lambda0, &s0, &omega0, &rho0};
  const char* names[] = {"lambda0", "s0", "omega0", "rho0"};
  for (int i = 0; i < 4; ++i) {
    const CoefficientFn& c = *all[i];
    if (c.is_exact()) {
      if (auto p = first_pole(c.exact(), domain)) {
        std::ostringstream os;
        os.precision(17);
        os << names[i] << " has a pole at x = " << *p << " inside the domain";
        throw PoleError(os.str(), *p);
      }
    } else if (c.kind() == CoefficientFn::Kind::numeric) {
      for (int k = 0; k < 33; ++k) {
        double x = grid_point(domain, k, 33);
        Complex v = c(x);
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
          std::ostringstream os;
          os.precision(17);
          os << names[i] << " is not finite at x = " << x;
          throw PoleError(os.str(), x);
        }
      }
    }
  }
}

LinearSystem LinearSystem::swapped() const { return {rho0, omega0, s0, lambda0, domain}; }

LinearSystem make_exact_system(const RationalFunction& lambda0, const RationalFunction& s0,
                               const RationalFunction& omega0, const RationalFunction& rho0, const Domain& d) {
  LinearSystem sys{lambda0, s0, omega0, rho0, d};
  sys.validate();
  return sys;
}

}  // namespace aimlinsys

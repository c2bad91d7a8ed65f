#include "aimlinsys/riccati.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "aimlinsys/errors.hpp"

namespace aimlinsys {

CoefficientFn riccati_residual(const LinearSystem& sys, const AlphaFunction& alpha) {
  const CoefficientFn& a = alpha.fn;
  return a.diff() - sys.omega0 * a * a - (sys.lambda0 - sys.rho0) * a + sys.s0;
}

double max_riccati_residual(const LinearSystem& sys, const AlphaFunction& alpha, const Domain& d, int points) {
  double worst = 0.0;
  for (int i = 0; i < points; ++i) {
    double x = grid_point(d, i, points);
    Jet a = alpha.fn.jet(x);
    Complex om = sys.omega0(x);
    Complex lr = sys.lambda0(x) - sys.rho0(x);
    Complex s = sys.s0(x);
    Complex res = a.d1 - om * a.v * a.v - lr * a.v + s;
    double scale = 1.0 + std::abs(a.d1) + std::abs(om * a.v * a.v) + std::abs(lr * a.v) + std::abs(s);
    worst = std::max(worst, std::abs(res) / scale);
  }
  return worst;
}

namespace {

constexpr int kSamples = 64;
constexpr double kSpread = 1e-10;

std::optional<Complex> constant_ratio(const CoefficientFn& num, const CoefficientFn& den, const Domain& d) {
  if (den.is_identically_zero()) return std::nullopt;
  if (num.is_exact() && den.is_exact()) {
    RationalFunction q = num.exact() / den.exact();
    if (!q.is_constant()) return std::nullopt;
    return Complex(q.constant_value().get_d());
  }
  std::vector<Complex> q;
  double mag = 0.0;
  for (int i = 0; i < kSamples; ++i) {
    double x = grid_point(d, i, kSamples);
    Complex dv = den(x);
    if (dv == Complex(0.0)) return std::nullopt;
    q.push_back(num(x) / dv);
    mag = std::max(mag, std::abs(q.back()));
  }
  for (const Complex& v : q) {
    if (std::abs(v - q.front()) > kSpread * std::max(mag, 1e-300)) return std::nullopt;
  }
  return q.front();
}

bool vanishes(const CoefficientFn& f, const Domain& d) {
  if (f.kind() != CoefficientFn::Kind::numeric) return f.is_identically_zero();
  for (int i = 0; i < kSamples; ++i) {
    if (std::abs(f(grid_point(d, i, kSamples))) > 1e-14) return false;
  }
  return true;
}

bool same_function(const CoefficientFn& a, const CoefficientFn& b, const Domain& d) {
  if (a.is_exact() && b.is_exact()) return a.exact() == b.exact();
  if (a.kind() == CoefficientFn::Kind::constant && b.kind() == CoefficientFn::Kind::constant) {
    return a.constant_value() == b.constant_value();
  }
  for (int i = 0; i < kSamples; ++i) {
    double x = grid_point(d, i, kSamples);
    Complex u = a(x);
    Complex v = b(x);
    if (std::abs(u - v) > kSpread * std::max({std::abs(u), std::abs(v), 1e-300})) return false;
  }
  return true;
}

std::string text(Complex c) {
  std::ostringstream os;
  os.precision(12);
  if (c.imag() == 0.0) {
    os << c.real();
  } else {
    os << "(" << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i)";
  }
  return os.str();
}

}  // namespace

SeparabilityClass detect_separable(const LinearSystem& sys) {
  const Domain& d = sys.domain;
  SeparabilityClass out;
  CoefficientFn D = sys.rho0 - sys.lambda0;
  if (same_function(sys.s0, sys.omega0, d) && !vanishes(sys.s0, d)) {
    if (auto k = constant_ratio(D, sys.s0, d)) {
      out.kind = SeparabilityClass::Kind::single;
      out.h = sys.s0;
      out.A = 1.0;
      out.B = -*k;
      out.C = 1.0;
      out.rho_minus_lambda_over_s = *k;
      out.detail = "s0 = omega0 and (rho0-lambda0)/s0 = " + text(*k);
      return out;
    }
  }
  if (!vanishes(D, d)) {
    auto p = constant_ratio(sys.omega0, D, d);
    auto q = constant_ratio(sys.s0, D, d);
    if (p && q) {
      out.kind = SeparabilityClass::Kind::both_ratios;
      out.h = D;
      out.A = *p;
      out.B = -1.0;
      out.C = *q;
      out.omega_over_rho_minus_lambda = *p;
      out.s_over_rho_minus_lambda = *q;
      out.detail = "omega0/(rho0-lambda0) = " + text(*p) + ", s0/(rho0-lambda0) = " + text(*q);
    } else {
      out.detail = "ratios against rho0-lambda0 are not constant";
    }
    return out;
  }
  if (!vanishes(sys.s0, d)) {
    if (auto p = constant_ratio(sys.omega0, sys.s0, d)) {
      out.kind = SeparabilityClass::Kind::both_ratios;
      out.h = sys.s0;
      out.A = *p;
      out.B = 0.0;
      out.C = 1.0;
      out.detail = "lambda0 = rho0 and omega0/s0 = " + text(*p);
    } else {
      out.detail = "lambda0 = rho0 but omega0/s0 is not constant";
    }
    return out;
  }
  out.kind = SeparabilityClass::Kind::both_ratios;
  out.h = vanishes(sys.omega0, d) ? CoefficientFn(Rational(1)) : sys.omega0;
  out.A = vanishes(sys.omega0, d) ? 0.0 : 1.0;
  out.B = 0.0;
  out.C = 0.0;
  out.detail = "lambda0 = rho0 and s0 = 0";
  return out;
}

namespace {

/// Zeros of |den| on d, found as sharp minima of the sampled modulus.
std::vector<double> find_poles(const std::function<Complex(double)>& den, const Domain& d) {
  constexpr int N = 4096;
  std::vector<double> xs(N);
  std::vector<double> m(N);
  for (int i = 0; i < N; ++i) {
    xs[i] = grid_point(d, i, N);
    m[i] = std::abs(den(xs[i]));
  }
  std::vector<double> poles;
  for (int i = 0; i < N; ++i) {
    bool left = i == 0 || m[i] <= m[i - 1];
    bool right = i == N - 1 || m[i] <= m[i + 1];
    if (!(left && right)) continue;
    double a = xs[std::max(i - 1, 0)];
    double b = xs[std::min(i + 1, N - 1)];
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - g * (b - a);
    double e = a + g * (b - a);
    double fc = std::abs(den(c));
    double fe = std::abs(den(e));
    for (int it = 0; it < 200 && b - a > 1e-15 * std::max(1.0, std::abs(a)); ++it) {
      if (fc < fe) {
        b = e;
        e = c;
        fe = fc;
        c = b - g * (b - a);
        fc = std::abs(den(c));
      } else {
        a = c;
        c = e;
        fc = fe;
        e = a + g * (b - a);
        fe = std::abs(den(e));
      }
    }
    double xm = 0.5 * (a + b);
    if (std::abs(den(xm)) < 1e-7) poles.push_back(xm);
  }
  std::sort(poles.begin(), poles.end());
  poles.erase(std::unique(poles.begin(), poles.end(), [](double u, double v) { return std::abs(u - v) < 1e-9; }),
              poles.end());
  return poles;
}

}  // namespace

AlphaFunction solve_separable(const LinearSystem& sys, const SeparabilityClass& cls, double x0, PolePolicy policy) {
  if (cls.kind == SeparabilityClass::Kind::none) throw ParameterError("system is not separable: " + cls.detail);
  const Domain& d = sys.domain;
  if (x0 < d.lo || x0 > d.hi) throw ParameterError("anchor x0 lies outside the domain");
  const Complex A = cls.A, B = cls.B, C = cls.C;
  const Complex zero(0.0);
  AlphaFunction out;
  out.provenance = Provenance::riccati_separable;

  if (C == zero) {
    out.fn = CoefficientFn();
    out.description = "alpha = 0";
    return out;
  }

  CoefficientFn h = cls.h;
  CoefficientFn H = integral(h, x0, evaluation_domain(d));
  auto P = [A, B, C](Complex a) { return A * a * a + B * a - C; };
  auto dP = [A, B](Complex a) { return 2.0 * A * a + B; };

  std::function<Complex(double)> value;
  std::function<Complex(double)> den;
  if (A == zero) {
    if (B == zero) {
      value = [H, C](double x) { return -C * H(x); };
      out.description = "alpha = -C*H";
    } else {
      value = [H, B, C](double x) { return C / B * (1.0 - std::exp(B * H(x))); };
      out.description = "alpha = (C/B)(1 - exp(B*H))";
    }
  } else {
    Complex disc = B * B + 4.0 * A * C;
    if (disc == zero) {
      Complex b0 = B / (2.0 * A);
      value = [H, A, B, b0](double x) { return -B / (2.0 * A) + b0 / (1.0 - A * b0 * H(x)); };
      den = [H, A, b0](double x) { return 1.0 - A * b0 * H(x); };
      out.description = "alpha = -B/(2A) + b/(1 - A*b*H)";
    } else {
      Complex sq = std::sqrt(disc);
      Complex mu = sq / (2.0 * A);
      Complex w = A * mu;
      Complex c0 = std::atanh(-B / sq);
      value = [H, A, B, mu, w, c0](double x) { return -B / (2.0 * A) - mu * std::tanh(w * H(x) + c0); };
      den = [H, w, c0](double x) { return std::cosh(w * H(x) + c0); };
      std::ostringstream os;
      os << "alpha = " << text(-B / (2.0 * A)) << " - " << text(mu) << "*tanh(" << text(w) << "*H + " << text(c0)
         << "), H = int_x0^x h";
      out.description = os.str();
    }
  }

  out.fn = CoefficientFn::from_jet(
      [value, h, P, dP](double x) {
        Complex a = value(x);
        Jet hj = h.jet(x);
        Complex d1 = hj.v * P(a);
        Complex d2 = hj.d1 * P(a) + hj.v * dP(a) * d1;
        return Jet{a, d1, d2};
      },
      "alpha");

  if (den) {
    auto poles = find_poles(den, d);
    if (!poles.empty()) {
      if (policy == PolePolicy::reject) {
        std::ostringstream os;
        os.precision(17);
        os << "alpha has a pole at x = " << poles.front() << " inside the domain";
        throw DomainRestrictionError(os.str(), poles.front());
      }
      double lo = d.lo;
      double hi = d.hi;
      bool lo_pole = false;
      bool hi_pole = false;
      for (double p : poles) {
        if (p < x0 && p >= lo) {
          lo = p;
          lo_pole = true;
        }
        if (p > x0 && p <= hi) {
          hi = p;
          hi_pole = true;
        }
      }
      double pad = 0.05 * (hi - lo);
      Domain valid{lo + (lo_pole ? pad : 0.0), hi - (hi_pole ? pad : 0.0)};
      if (x0 < valid.lo || x0 > valid.hi) {
        throw DomainRestrictionError("anchor too close to a pole of alpha", lo_pole ? lo : hi);
      }
      out.valid = valid;
    }
  }
  return out;
}

std::pair<LinearSystem, AlphaFunction> alpha_from_fg(const FGSpec& spec, int n) {
  if (n < 1) throw ParameterError("n must be positive");
  FGState st = fg_iterate(spec.F0, spec.G0, n);
  if (!st.fg_deltas[static_cast<std::size_t>(n)].is_zero()) {
    throw ParameterError("F/G recursion does not terminate at n = " + std::to_string(n));
  }
  const RationalFunction& F = st.F[static_cast<std::size_t>(n - 1)];
  const RationalFunction& G = st.G[static_cast<std::size_t>(n - 1)];
  const Domain& d = spec.domain;
  double x0 = spec.anchor.value_or(d.midpoint());
  Domain ext = evaluation_domain(d);
  LinearSystem sys;
  sys.lambda0 = spec.lambda0;
  sys.rho0 = spec.rho0;
  sys.domain = d;
  AlphaFunction alpha;
  alpha.provenance = Provenance::fg_ratio;
  if (spec.direction == FGDirection::forward) {
    if (F.is_zero()) throw DegenerateRatioError("F_{n-1} is identically zero");
    CoefficientFn W = integral(spec.F0 + spec.rho0 - spec.lambda0, x0, ext);
    CoefficientFn emW = exp(-W);
    sys.s0 = spec.G0 * emW;
    sys.omega0 = exp(W);
    RationalFunction ratio = G / F;
    alpha.fn = CoefficientFn(ratio) * emW;
    alpha.description = "alpha = (" + ratio.to_string() + ")*exp(-W)";
  } else {
    if (G.is_zero()) throw DegenerateRatioError("G_{n-1} is identically zero");
    CoefficientFn V = integral(spec.F0 - spec.rho0 + spec.lambda0, x0, ext);
    sys.s0 = exp(V);
    sys.omega0 = spec.G0 * exp(-V);
    RationalFunction ratio = F / G;
    alpha.fn = sys.s0 * CoefficientFn(ratio);
    alpha.description = "alpha = (" + ratio.to_string() + ")*exp(V)";
  }
  return {sys, alpha};
}

std::string to_string(SeparabilityClass::Kind k) {
  switch (k) {
    case SeparabilityClass::Kind::single:
      return "single";
    case SeparabilityClass::Kind::both_ratios:
      return "both-ratios";
    case SeparabilityClass::Kind::none:
      return "none";
  }
  return "none";
}

}  // namespace aimlinsys

#include "aimlinsys/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "aimlinsys/errors.hpp"

namespace aimlinsys {

namespace {

constexpr std::array<double, 4> kGLNodes = {0.1834346424956498, 0.5255324099163290, 0.7966664774136267,
                                             0.9602898564975363};
constexpr std::array<double, 4> kGLWeights = {0.3626837833783620, 0.3137066458778873, 0.2223810344533745,
                                               0.1012285362903763};

struct Simpson {
  const ScalarFn& f;
  long budget;
  long evals = 0;
  double worst = 0.0;

  Complex eval(double x) {
    if (++evals > budget) {
      throw QuadratureError("quadrature evaluation budget exhausted", worst);
    }
    Complex v = f(x);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      std::ostringstream os;
      os.precision(17);
      os << "non-finite integrand at x = " << x;
      throw QuadratureError(os.str(), INFINITY);
    }
    return v;
  }

  Complex recurse(double a, double b, Complex fa, Complex fm, Complex fb, Complex whole, double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m);
    double rm = 0.5 * (m + b);
    Complex flm = eval(lm);
    Complex frm = eval(rm);
    Complex left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    Complex right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    Complex delta = left + right - whole;
    double err = std::abs(delta) / 15.0;
    if (depth <= 0 || err <= tol) {
      worst = std::max(worst, err);
      if (depth <= 0 && err > tol) {
        throw QuadratureError("adaptive Simpson reached its depth limit", err);
      }
      return left + right + delta / 15.0;
    }
    return recurse(a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           recurse(m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
  }
};

}  // namespace

QuadratureResult adaptive_simpson(const ScalarFn& f, double a, double b, double tol, int max_depth,
                                  long max_evaluations) {
  if (a == b) return {Complex(0.0), 0.0, 0};
  Simpson s{f, max_evaluations};
  Complex fa = s.eval(a);
  Complex fb = s.eval(b);
  Complex fm = s.eval(0.5 * (a + b));
  Complex whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  Complex v = s.recurse(a, b, fa, fm, fb, whole, tol, max_depth);
  return {v, s.worst, s.evals};
}

Complex gauss_legendre8(const ScalarFn& f, double a, double b) {
  double c = 0.5 * (a + b);
  double h = 0.5 * (b - a);
  Complex acc(0.0);
  for (std::size_t i = 0; i < kGLNodes.size(); ++i) {
    acc += kGLWeights[i] * (f(c - h * kGLNodes[i]) + f(c + h * kGLNodes[i]));
  }
  return h * acc;
}

Antiderivative::Antiderivative(ScalarFn f, double x0, Domain d, QuadratureOptions opt)
    : f_(std::move(f)), x0_(x0), domain_(d) {
  if (!(d.lo < d.hi) || x0 < d.lo || x0 > d.hi) throw ParameterError("anchor outside the quadrature domain");
  double w = d.width();
  int cells = std::max(opt.cells, 2);
  int left = x0 > d.lo ? std::max(1, static_cast<int>(std::lround(cells * (x0 - d.lo) / w))) : 0;
  int right = x0 < d.hi ? std::max(1, static_cast<int>(std::lround(cells * (d.hi - x0) / w))) : 0;

  for (int i = left; i > 0; --i) nodes_.push_back(x0 - (x0 - d.lo) * i / left);
  nodes_.push_back(x0);
  for (int i = 1; i <= right; ++i) nodes_.push_back(x0 + (d.hi - x0) * i / right);

  std::size_t anchor = static_cast<std::size_t>(left);
  values_.assign(nodes_.size(), Complex(0.0));
  mismatch_.assign(nodes_.size(), Complex(0.0));
  long budget = opt.max_evaluations;
  auto cell = [&](std::size_t k) {
    double a = nodes_[k];
    double b = nodes_[k + 1];
    Complex coarse = gauss_legendre8(f_, a, b);
    double tol = opt.tol * std::max(1.0, std::abs(coarse));
    auto r = adaptive_simpson(f_, a, b, tol, opt.max_depth, budget);
    budget -= r.evaluations;
    achieved_ = std::max(achieved_, r.error_estimate);
    return std::pair{r.value, coarse};
  };
  for (std::size_t k = anchor; k + 1 < nodes_.size(); ++k) {
    auto [v, coarse] = cell(k);
    values_[k + 1] = values_[k] + v;
    mismatch_[k] = v - coarse;
  }
  for (std::size_t k = anchor; k-- > 0;) {
    auto [v, coarse] = cell(k);
    values_[k] = values_[k + 1] - v;
    mismatch_[k] = v - coarse;
  }
}

Complex Antiderivative::operator()(double x) const {
  if (x == x0_) return Complex(0.0);
  auto it = std::upper_bound(nodes_.begin(), nodes_.end(), x);
  std::size_t k = it == nodes_.begin() ? 0 : static_cast<std::size_t>(it - nodes_.begin()) - 1;
  if (k + 1 >= nodes_.size()) k = nodes_.size() - 2;
  double a = nodes_[k];
  double h = nodes_[k + 1] - a;
  double t = (x - a) / h;
  return values_[k] + gauss_legendre8(f_, a, x) + t * mismatch_[k];
}

}  // namespace aimlinsys

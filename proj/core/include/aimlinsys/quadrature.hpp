#pragma once

#include <memory>
#include <vector>

#include "aimlinsys/numeric.hpp"

namespace aimlinsys {

struct QuadratureOptions {
  double tol = 1e-10;
  int max_depth = 40;
  /// Grid cells across the whole domain.
  int cells = 64;
  long max_evaluations = 50'000'000;
};

struct QuadratureResult {
  Complex value;
  double error_estimate = 0.0;
  long evaluations = 0;
};

/// Adaptive Simpson with Richardson correction on [a, b], absolute tolerance `tol`.
QuadratureResult adaptive_simpson(const ScalarFn& f, double a, double b, double tol, int max_depth = 40,
                                  long max_evaluations = 50'000'000);

/// 8-point Gauss-Legendre on [a, b].
Complex gauss_legendre8(const ScalarFn& f, double a, double b);

/// x ↦ ∫ₓ₀ˣ f(t) dt on a domain. Node values on a uniform grid through x0 come
/// from adaptive Simpson; between nodes the value is Gauss-Legendre from the
/// left node, blended linearly so it also matches the right node.
class Antiderivative {
 public:
  Antiderivative(ScalarFn f, double x0, Domain d, QuadratureOptions opt = {});

  Complex operator()(double x) const;
  double anchor() const { return x0_; }
  const Domain& domain() const { return domain_; }
  /// Worst node error estimate.
  double achieved_tolerance() const { return achieved_; }

 private:
  ScalarFn f_;
  double x0_;
  Domain domain_;
  std::vector<double> nodes_;
  std::vector<Complex> values_;
  std::vector<Complex> mismatch_;
  double achieved_ = 0.0;
};

}  // namespace aimlinsys

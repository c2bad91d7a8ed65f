#pragma once

#include <complex>
#include <functional>

namespace aimlinsys {

using Complex = std::complex<double>;

/// Scalar function of a real argument, complex valued.
using ScalarFn = std::function<Complex(double)>;

/// Closed real interval [lo, hi] with lo < hi.
struct Domain {
  double lo = 0.0;
  double hi = 1.0;

  double width() const { return hi - lo; }
  double midpoint() const { return 0.5 * (lo + hi); }
  bool contains(double x) const { return x >= lo && x <= hi; }
};

/// `count` uniformly spaced points including both endpoints.
inline double grid_point(const Domain& d, int i, int count) {
  if (count <= 1) return d.midpoint();
  return d.lo + (d.hi - d.lo) * static_cast<double>(i) / static_cast<double>(count - 1);
}

}  // namespace aimlinsys

#pragma once

#include <optional>
#include <vector>

#include "aimlinsys/numeric.hpp"
#include "aimlinsys/polynomial.hpp"
#include "aimlinsys/rational_function.hpp"

namespace aimlinsys {

/// Sturm chain of the square-free part of p.
std::vector<Polynomial> sturm_sequence(const Polynomial& p);

/// Number of distinct real roots of p in the closed interval [lo, hi].
int count_real_roots(const Polynomial& p, const Rational& lo, const Rational& hi);
int count_real_roots(const Polynomial& p, double lo, double hi);

/// Distinct real roots in [lo, hi], located by Sturm bisection to width `tol`.
std::vector<double> real_roots(const Polynomial& p, double lo, double hi, double tol = 1e-13);

/// Smallest pole of f in [d.lo, d.hi], if any.
std::optional<double> first_pole(const RationalFunction& f, const Domain& d);

/// Widest sub-interval of `d` on which none of `polys` vanishes, each end pulled
/// in from the nearest root by `margin` times the gap width.
Domain widest_root_free_gap(const std::vector<Polynomial>& polys, const Domain& d, double margin = 0.05);

}  // namespace aimlinsys

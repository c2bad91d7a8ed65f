#include "aimlinsys/specfun.hpp"

#include <limits>

#include "aimlinsys/errors.hpp"

namespace aimlinsys {

Rational pochhammer(const Rational& a, unsigned k) {
  Rational out = 1;
  for (unsigned i = 0; i < k; ++i) {
    out *= a + i;
    if (out == 0) break;
  }
  return out;
}

unsigned truncation_degree(const std::vector<Rational>& upper) {
  std::optional<unsigned long> best;
  for (const auto& u : upper) {
    if (auto m = as_nonpositive_integer(u)) {
      if (!best || *m < *best) best = m;
    }
  }
  if (!best) throw ParameterError("hypergeometric series does not terminate: no nonpositive-integer upper parameter");
  if (*best > static_cast<unsigned long>(Polynomial::kMaxDegree)) throw ResourceError("truncation degree too large");
  return static_cast<unsigned>(*best);
}

Polynomial hyp_series(const std::vector<Rational>& upper, const std::vector<Rational>& lower) {
  unsigned n = truncation_degree(upper);
  for (const auto& l : lower) {
    if (auto m = as_nonpositive_integer(l); m && *m < n) {
      throw ParameterError("lower hypergeometric parameter " + to_string(l) + " is a nonpositive integer in range");
    }
  }
  std::vector<Rational> c(n + 1);
  Rational term = 1;
  c[0] = 1;
  for (unsigned k = 0; k < n; ++k) {
    for (const auto& u : upper) term *= u + k;
    for (const auto& l : lower) term /= l + k;
    term /= k + 1;
    c[k + 1] = term;
  }
  return Polynomial(std::move(c));
}

RationalFunction hyp_polynomial(const HypergeometricSpec& spec) {
  return compose(hyp_series(spec.upper, spec.lower), spec.argument);
}

Polynomial hermite(unsigned n) {
  if (n > 64) throw ParameterError("hermite: n must be at most 64");
  Polynomial prev = Polynomial::constant(1);
  if (n == 0) return prev;
  Polynomial two_x = Polynomial::monomial(2, 1);
  Polynomial cur = two_x;
  for (unsigned k = 1; k < n; ++k) {
    Polynomial next = two_x * cur - prev * Rational(2 * k);
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

}  // namespace aimlinsys

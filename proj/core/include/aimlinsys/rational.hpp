#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace aimlinsys {

/// Arbitrary-precision rational. GMP keeps every value in lowest terms with a
/// positive denominator, and zero is stored as 0/1.
using Rational = mpq_class;
using BigInt = mpz_class;

/// Parses "p", "p/q", "-1.25", "3e-2" into an exact rational.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);

/// Exact square root when q is the square of a rational.
std::optional<Rational> exact_sqrt(const Rational& q);

/// Rational within one ulp of a finite double (exact binary expansion).
Rational rational_from_double(double x);

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

/// Returns m when q == -m for a nonnegative integer m.
std::optional<unsigned long> as_nonpositive_integer(const Rational& q);

}  // namespace aimlinsys

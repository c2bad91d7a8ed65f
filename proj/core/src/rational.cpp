#include "aimlinsys/rational.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

#include "aimlinsys/errors.hpp"

namespace aimlinsys {

namespace {

Rational pow10(long e) {
  BigInt p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(e < 0 ? -e : e));
  return e < 0 ? Rational(BigInt(1), p) : Rational(p);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  std::size_t start = 0;
  while (start < s.size() && std::isspace(static_cast<unsigned char>(s[start]))) ++start;
  s = s.substr(start);
  if (s.empty()) throw ParameterError("empty rational literal");

  if (auto slash = s.find('/'); slash != std::string::npos) {
    Rational num = parse_rational(s.substr(0, slash));
    Rational den = parse_rational(s.substr(slash + 1));
    if (den == 0) throw DivisionByZeroError("rational literal with zero denominator: " + s);
    Rational out = num / den;
    out.canonicalize();
    return out;
  }

  bool negative = false;
  std::size_t i = 0;
  if (s[i] == '+' || s[i] == '-') {
    negative = s[i] == '-';
    ++i;
  }
  std::string digits;
  long frac_digits = 0;
  bool seen_point = false;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      if (seen_point) ++frac_digits;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (digits.empty()) throw ParameterError("malformed rational literal: " + s);
  long exponent = 0;
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    std::size_t used = 0;
    try {
      exponent = std::stol(s.substr(i + 1), &used);
    } catch (const std::exception&) {
      throw ParameterError("malformed exponent in rational literal: " + s);
    }
    i += 1 + used;
  }
  if (i != s.size()) throw ParameterError("malformed rational literal: " + s);

  Rational out(BigInt(digits, 10));
  out *= pow10(exponent - frac_digits);
  if (negative) out = -out;
  out.canonicalize();
  return out;
}

std::string to_string(const Rational& q) { return q.get_str(10); }

std::optional<Rational> exact_sqrt(const Rational& q) {
  if (q < 0) return std::nullopt;
  const BigInt& n = q.get_num();
  const BigInt& d = q.get_den();
  if (mpz_perfect_square_p(n.get_mpz_t()) == 0 || mpz_perfect_square_p(d.get_mpz_t()) == 0) {
    return std::nullopt;
  }
  BigInt rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  Rational r(rn, rd);
  r.canonicalize();
  return r;
}

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw ParameterError("cannot convert a non-finite double to a rational");
  Rational out;
  mpq_set_d(out.get_mpq_t(), x);
  return out;
}

std::optional<unsigned long> as_nonpositive_integer(const Rational& q) {
  if (!is_integer(q) || q > 0) return std::nullopt;
  BigInt m = -q.get_num();
  if (!m.fits_ulong_p()) return std::nullopt;
  return m.get_ui();
}

}  // namespace aimlinsys

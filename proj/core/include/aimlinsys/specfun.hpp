#pragma once

#include <optional>
#include <vector>

#include "aimlinsys/closed_form.hpp"
#include "aimlinsys/coefficient.hpp"
#include "aimlinsys/polynomial.hpp"
#include "aimlinsys/rational_function.hpp"

namespace aimlinsys {

/// Rising factorial (a)_k.
Rational pochhammer(const Rational& a, unsigned k);

/// pFq(upper; lower; argument) truncated by a nonpositive-integer upper parameter.
struct HypergeometricSpec {
  std::vector<Rational> upper;
  std::vector<Rational> lower;
  RationalFunction argument = RationalFunction::x();
};

/// Degree of truncation: the smallest m with -m among the upper parameters.
unsigned truncation_degree(const std::vector<Rational>& upper);

/// The series as a polynomial in its own argument z.
Polynomial hyp_series(const std::vector<Rational>& upper, const std::vector<Rational>& lower);

/// The series composed with the argument; a polynomial whenever the argument is.
RationalFunction hyp_polynomial(const HypergeometricSpec& spec);

/// Physicists' Hermite polynomial, n ≤ 64.
Polynomial hermite(unsigned n);

enum class AlphaTable { IV, V, VI };

/// Concrete instance of a row of the ratio tables. R is used by Table IV,
/// λ₀ and ρ₀ by Tables V and VI.
struct TableAlphaRow {
  AlphaTable table = AlphaTable::IV;
  int row = 1;
  int n = 1;
  Rational a = 1;
  Rational b = 1;
  Rational c = 1;
  Rational k = 1;
  CoefficientFn R = CoefficientFn(Rational(1));
  CoefficientFn lambda0;
  CoefficientFn rho0;
  std::optional<Domain> domain;
  std::optional<double> anchor;
};

struct TableAlphaResult {
  LinearSystem system;
  AlphaFunction alpha;
  /// Polynomial solution of the underlying second-order equation.
  Polynomial y;
  /// y'/y (Table IV), G_{n-1}/F_{n-1} (Table V) or F_{n-1}/G_{n-1} (Table VI).
  RationalFunction ratio;
  /// The same ratio assembled from the displayed hypergeometric quotient.
  RationalFunction displayed;
  /// Second-order equation y'' = F0·y' + G0·y behind the row.
  RationalFunction F0, G0;
};

int table_rows(AlphaTable t);

TableAlphaResult table_alpha(const TableAlphaRow& row);

}  // namespace aimlinsys

#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "aimlinsys/closed_form.hpp"
#include "aimlinsys/coefficient.hpp"
#include "aimlinsys/specfun.hpp"

namespace aimlinsys {

using Params = std::map<std::string, Rational>;

/// A solvable system from the tables or the worked examples, with its
/// reference values.
struct FamilyInstance {
  /// "I".."VI" or "example".
  std::string table;
  int row = 0;
  Params params;
  /// Non-rational bindings for the label, e.g. "f=x g=1 + x^2".
  std::string bindings;
  int n = 0;
  LinearSystem system;
  double anchor = 0.0;

  std::optional<AlphaFunction> expected_alpha;
  /// Set when the reference α is a rational function.
  std::optional<RationalFunction> expected_alpha_exact;
  /// Constant-coefficient examples: both roots of ω₀α² + (λ₀-ρ₀)α - s₀ = 0.
  std::vector<Complex> expected_alpha_set;
  /// Power exponents (Table I) or exponential rates (constant examples).
  std::vector<Complex> expected_exponents;
  enum class Exponents { none, power, rate } exponent_kind = Exponents::none;
  std::optional<SolutionEvaluator> expected_solution;

  /// The reference α is an AIM ratio, so exact instances must terminate.
  bool aim_ratio = true;

  double residual_tol = 1e-7;
  double oracle_tol = 1e-6;
  /// Run the oracle comparison in the regression (off for rows whose
  /// coefficients are themselves quadratures).
  bool oracle = true;

  std::string id() const;
  std::string label() const;
};

FamilyInstance table1_family(int row, const Params& params, int n);
/// Params include n.
FamilyInstance table2_family(int row, const Params& params);

/// Rows 1-4 use f, g, a, b. Row 5 uses λ₀, s₀, ρ₀; row 6 uses λ₀, ω₀, ρ₀.
struct Table3Bindings {
  CoefficientFn f = CoefficientFn(Rational(0));
  CoefficientFn g = CoefficientFn(Rational(1));
  Rational a = 1;
  Rational b = 1;
  CoefficientFn lambda0, s0, omega0, rho0;
  Domain domain{0.0, 1.0};
  std::optional<double> anchor;
};
FamilyInstance table3_family(int row, const Table3Bindings& bindings);

/// 1: a/x, b/x, c/x, d/x, either with a given or derived from (b, c, d, n).
/// 2, 3: the constant systems. 4: the Hermite system with λ₀ = ρ₀ = 0, param n.
FamilyInstance example_system(int id, const Params& params = {});

/// Rows of Tables IV-VI through the ratio constructors.
FamilyInstance table_alpha_family(const TableAlphaRow& row);

/// The regression grid shipped for a table ("I".."VI", "example"); empty
/// `rows` means every row.
std::vector<FamilyInstance> shipped_instances(const std::string& table, const std::vector<int>& rows = {});

struct FamilyCheck {
  std::string id;
  std::vector<std::pair<std::string, bool>> checks;
  std::vector<std::string> notes;
  double max_residual = 0.0;
  double max_deviation = 0.0;
  double riccati_residual = 0.0;
  bool pass = false;
};

struct CheckOptions {
  bool oracle = true;
  int grid = 33;
};

FamilyCheck check_family(const FamilyInstance& inst, const CheckOptions& opt = {});

/// Least-squares slope of log|f| against log x at 5 points of d.
double fit_power(const std::function<Complex(double)>& f, const Domain& d);

struct CatalogEntry {
  std::string id;
  std::string table;
  int row = 0;
  std::vector<std::string> parameters;
  std::vector<std::string> constraints;
  std::string description;
};

std::vector<CatalogEntry> family_catalog();

/// "I", "III:1-4", "VI:1", "V:1,3", "example", "all".
std::vector<std::pair<std::string, std::vector<int>>> parse_table_selector(const std::string& selector);

}  // namespace aimlinsys

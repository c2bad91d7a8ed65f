#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "aimlinsys/coefficient.hpp"
#include "aimlinsys/errors.hpp"
#include "aimlinsys/rational.hpp"

namespace aimlinsys {

/// Syntax error, unknown identifier or exact-mode violation, with a 1-based
/// source position.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column)
      : Error(what + " at line " + std::to_string(line) + ", column " + std::to_string(column)),
        line_(line),
        column_(column) {}
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_, column_;
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Kind { number, variable, parameter, neg, add, sub, mul, div, pow, call };

  Kind kind = Kind::number;
  Rational value;
  /// Parameter or function name.
  std::string name;
  std::vector<ExprPtr> args;
  int line = 1;
  int column = 1;

  static ExprPtr number(const Rational& v);
  static ExprPtr variable();
  static ExprPtr parameter(const std::string& name);
  static ExprPtr unary(Kind k, ExprPtr a);
  static ExprPtr binary(Kind k, ExprPtr a, ExprPtr b);
  static ExprPtr call(const std::string& fn, ExprPtr a);
};

/// Functions accepted in numeric mode.
const std::vector<std::string>& expression_functions();

/// Precedence from high to low: ^ (right-associative), unary -, * / and
/// juxtaposition, + -. Decimals become exact rationals and a quotient of two
/// literals folds into one literal. U+2212 is read as '-'.
ExprPtr parse_expression(const std::string& text, int first_line = 1);

/// Minimal parentheses; parse(print(e)) reproduces e for canonical trees.
std::string print_expression(const ExprPtr& e);

/// Folds literal quotients and drops negative literals into `neg` nodes, the
/// form the parser produces.
ExprPtr canonicalize(const ExprPtr& e);

bool structurally_equal(const ExprPtr& a, const ExprPtr& b);

ExprPtr bind_parameters(const ExprPtr& e, const std::map<std::string, Rational>& params);

/// d/dx with light simplification.
ExprPtr differentiate(const ExprPtr& e);

bool has_function_call(const ExprPtr& e);

/// Unbound parameters raise ParseError.
Complex evaluate(const ExprPtr& e, Complex x);

/// Exact mode: calls are rejected and exponents must be integer constants.
RationalFunction to_rational_function(const ExprPtr& e, const std::map<std::string, Rational>& params = {});

enum class EvalMode { exact, numeric };

CoefficientFn to_coefficient(const ExprPtr& e, const std::map<std::string, Rational>& params, EvalMode mode);

}  // namespace aimlinsys

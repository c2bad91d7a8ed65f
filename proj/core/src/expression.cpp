#include "aimlinsys/expression.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace aimlinsys {

using Kind = Expr::Kind;

ExprPtr Expr::number(const Rational& v) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::number;
  e->value = v;
  return e;
}

ExprPtr Expr::variable() {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::variable;
  e->name = "x";
  return e;
}

ExprPtr Expr::parameter(const std::string& name) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::parameter;
  e->name = name;
  return e;
}

ExprPtr Expr::unary(Kind k, ExprPtr a) {
  auto e = std::make_shared<Expr>();
  e->kind = k;
  e->args = {std::move(a)};
  return e;
}

ExprPtr Expr::binary(Kind k, ExprPtr a, ExprPtr b) {
  auto e = std::make_shared<Expr>();
  e->kind = k;
  e->args = {std::move(a), std::move(b)};
  return e;
}

ExprPtr Expr::call(const std::string& fn, ExprPtr a) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::call;
  e->name = fn;
  e->args = {std::move(a)};
  return e;
}

const std::vector<std::string>& expression_functions() {
  static const std::vector<std::string> fns{"exp", "log", "sin", "cos", "tan", "tanh", "sqrt"};
  return fns;
}

namespace {

bool is_function(const std::string& s) {
  const auto& f = expression_functions();
  return std::find(f.begin(), f.end(), s) != f.end();
}

struct Token {
  enum class Type { number, ident, op, lparen, rparen, end } type;
  Rational value;
  std::string text;
  char op = 0;
  int line = 1;
  int column = 1;
};

std::vector<Token> lex(const std::string& s, int first_line) {
  std::vector<Token> out;
  int line = first_line, col = 1;
  std::size_t i = 0;
  auto push = [&](Token t) { out.push_back(std::move(t)); };
  while (i < s.size()) {
    unsigned char ch = static_cast<unsigned char>(s[i]);
    if (ch == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (std::isspace(ch) != 0) {
      ++col;
      ++i;
      continue;
    }
    if (ch == 0xE2 && i + 2 < s.size() && static_cast<unsigned char>(s[i + 1]) == 0x88 &&
        static_cast<unsigned char>(s[i + 2]) == 0x92) {
      push({Token::Type::op, {}, "-", '-', line, col});
      i += 3;
      ++col;
      continue;
    }
    const bool leading_point = ch == '.' && i + 1 < s.size() && std::isdigit(static_cast<unsigned char>(s[i + 1]));
    if (std::isdigit(ch) != 0 || leading_point) {
      const int start_col = col;
      std::size_t j = i;
      std::string digits;
      int frac = 0;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j])) != 0) digits += s[j++];
      if (j < s.size() && s[j] == '.') {
        ++j;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j])) != 0) {
          digits += s[j++];
          ++frac;
        }
      }
      long exponent = 0;
      if (j < s.size() && (s[j] == 'e' || s[j] == 'E')) {
        std::size_t k = j + 1;
        bool neg = false;
        if (k < s.size() && (s[k] == '+' || s[k] == '-')) neg = s[k++] == '-';
        if (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k])) != 0) {
          long e = 0;
          while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k])) != 0) {
            e = e * 10 + (s[k++] - '0');
            if (e > 10000) throw ParseError("exponent too large", line, start_col);
          }
          exponent = neg ? -e : e;
          j = k;
        }
      }
      BigInt num(digits.empty() ? "0" : digits, 10);
      BigInt ten = 10;
      BigInt scale = 1;
      long shift = exponent - frac;
      for (long t = 0; t < std::abs(shift); ++t) scale *= ten;
      Rational v = shift >= 0 ? Rational(num * scale) : Rational(num, scale);
      v.canonicalize();
      push({Token::Type::number, v, s.substr(i, j - i), 0, line, start_col});
      col += static_cast<int>(j - i);
      i = j;
      continue;
    }
    if (std::isalpha(ch) != 0 || ch == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) != 0 || s[j] == '_')) ++j;
      push({Token::Type::ident, {}, s.substr(i, j - i), 0, line, col});
      col += static_cast<int>(j - i);
      i = j;
      continue;
    }
    if (ch == '(' || ch == ')') {
      push({ch == '(' ? Token::Type::lparen : Token::Type::rparen, {}, std::string(1, static_cast<char>(ch)), 0, line,
            col});
      ++col;
      ++i;
      continue;
    }
    if (ch == '+' || ch == '-' || ch == '*' || ch == '/' || ch == '^') {
      push({Token::Type::op, {}, std::string(1, static_cast<char>(ch)), static_cast<char>(ch), line, col});
      ++col;
      ++i;
      continue;
    }
    if (ch >= 0x80) throw ParseError("unexpected character", line, col);
    throw ParseError(std::string("unexpected character '") + static_cast<char>(ch) + "'", line, col);
  }
  push({Token::Type::end, {}, "", 0, line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : t_(std::move(toks)) {}

  ExprPtr parse() {
    ExprPtr e = expr();
    if (peek().type != Token::Type::end) fail("unexpected '" + peek().text + "'");
    return e;
  }

 private:
  std::vector<Token> t_;
  std::size_t i_ = 0;

  const Token& peek() const { return t_[i_]; }
  Token take() { return t_[i_++]; }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, peek().line, peek().column); }
  bool at_op(char c) const { return peek().type == Token::Type::op && peek().op == c; }

  static ExprPtr located(ExprPtr e, const Token& tok) {
    auto m = std::const_pointer_cast<Expr>(e);
    m->line = tok.line;
    m->column = tok.column;
    return m;
  }

  ExprPtr expr() {
    ExprPtr lhs = term();
    while (at_op('+') || at_op('-')) {
      Token op = take();
      ExprPtr rhs = term();
      lhs = located(Expr::binary(op.op == '+' ? Kind::add : Kind::sub, lhs, rhs), op);
    }
    return lhs;
  }

  bool starts_operand() const {
    auto ty = peek().type;
    return ty == Token::Type::number || ty == Token::Type::ident || ty == Token::Type::lparen;
  }

  ExprPtr term() {
    ExprPtr lhs = unary();
    for (;;) {
      if (at_op('*') || at_op('/')) {
        Token op = take();
        ExprPtr rhs = unary();
        if (op.op == '/' && lhs->kind == Kind::number && rhs->kind == Kind::number && rhs->value != 0) {
          lhs = located(Expr::number(lhs->value / rhs->value), op);
        } else {
          lhs = located(Expr::binary(op.op == '*' ? Kind::mul : Kind::div, lhs, rhs), op);
        }
      } else if (starts_operand()) {
        Token here = peek();
        ExprPtr rhs = unary();
        lhs = located(Expr::binary(Kind::mul, lhs, rhs), here);
      } else {
        return lhs;
      }
    }
  }

  ExprPtr unary() {
    if (at_op('-')) {
      Token op = take();
      return located(Expr::unary(Kind::neg, unary()), op);
    }
    if (at_op('+')) {
      take();
      return unary();
    }
    return power();
  }

  ExprPtr power() {
    ExprPtr base = primary();
    if (at_op('^')) {
      Token op = take();
      ExprPtr ex = unary();
      return located(Expr::binary(Kind::pow, base, ex), op);
    }
    return base;
  }

  ExprPtr primary() {
    const Token tok = peek();
    switch (tok.type) {
      case Token::Type::number:
        take();
        return located(Expr::number(tok.value), tok);
      case Token::Type::ident: {
        take();
        if (is_function(tok.text)) {
          if (peek().type != Token::Type::lparen) fail("function '" + tok.text + "' needs an argument in parentheses");
          take();
          ExprPtr arg = expr();
          if (peek().type != Token::Type::rparen) fail("expected ')'");
          take();
          return located(Expr::call(tok.text, arg), tok);
        }
        if (tok.text == "x") return located(Expr::variable(), tok);
        return located(Expr::parameter(tok.text), tok);
      }
      case Token::Type::lparen: {
        take();
        ExprPtr e = expr();
        if (peek().type != Token::Type::rparen) fail("expected ')'");
        take();
        return e;
      }
      case Token::Type::end:
        fail("unexpected end of input");
      default:
        fail("unexpected '" + tok.text + "'");
    }
  }
};

int precedence(const ExprPtr& e) {
  switch (e->kind) {
    case Kind::number:
      if (e->value < 0) return 3;
      return is_integer(e->value) ? 5 : 2;
    case Kind::variable:
    case Kind::parameter:
    case Kind::call:
      return 5;
    case Kind::pow:
      return 4;
    case Kind::neg:
      return 3;
    case Kind::mul:
    case Kind::div:
      return 2;
    case Kind::add:
    case Kind::sub:
      return 1;
  }
  return 0;
}

std::string wrap(const ExprPtr& e, int need) {
  std::string s = print_expression(e);
  return precedence(e) >= need ? s : "(" + s + ")";
}

bool is_num(const ExprPtr& e, long v) { return e->kind == Kind::number && e->value == v; }

ExprPtr mk_add(const ExprPtr& a, const ExprPtr& b) {
  if (is_num(a, 0)) return b;
  if (is_num(b, 0)) return a;
  if (a->kind == Kind::number && b->kind == Kind::number) return Expr::number(a->value + b->value);
  return Expr::binary(Kind::add, a, b);
}

ExprPtr mk_neg(const ExprPtr& a) {
  if (a->kind == Kind::number) return Expr::number(-a->value);
  if (a->kind == Kind::neg) return a->args[0];
  return Expr::unary(Kind::neg, a);
}

ExprPtr mk_sub(const ExprPtr& a, const ExprPtr& b) {
  if (is_num(b, 0)) return a;
  if (is_num(a, 0)) return mk_neg(b);
  if (a->kind == Kind::number && b->kind == Kind::number) return Expr::number(a->value - b->value);
  return Expr::binary(Kind::sub, a, b);
}

ExprPtr mk_mul(const ExprPtr& a, const ExprPtr& b) {
  if (is_num(a, 0) || is_num(b, 0)) return Expr::number(0);
  if (is_num(a, 1)) return b;
  if (is_num(b, 1)) return a;
  if (a->kind == Kind::number && b->kind == Kind::number) return Expr::number(a->value * b->value);
  return Expr::binary(Kind::mul, a, b);
}

ExprPtr mk_div(const ExprPtr& a, const ExprPtr& b) {
  if (is_num(b, 1)) return a;
  if (is_num(a, 0) && !is_num(b, 0)) return Expr::number(0);
  return Expr::binary(Kind::div, a, b);
}

ExprPtr mk_pow(const ExprPtr& a, const ExprPtr& b) {
  if (is_num(b, 1)) return a;
  if (is_num(b, 0)) return Expr::number(1);
  return Expr::binary(Kind::pow, a, b);
}

bool has_variable(const ExprPtr& e) {
  if (e->kind == Kind::variable) return true;
  return std::any_of(e->args.begin(), e->args.end(), has_variable);
}

Complex int_pow(Complex b, long n) {
  bool inv = n < 0;
  unsigned long k = static_cast<unsigned long>(inv ? -n : n);
  Complex r = 1.0;
  while (k != 0) {
    if ((k & 1U) != 0) r *= b;
    b *= b;
    k >>= 1U;
  }
  return inv ? 1.0 / r : r;
}

Complex apply(const std::string& fn, Complex a) {
  if (fn == "exp") return std::exp(a);
  if (fn == "log") return std::log(a);
  if (fn == "sin") return std::sin(a);
  if (fn == "cos") return std::cos(a);
  if (fn == "tan") return std::tan(a);
  if (fn == "tanh") return std::tanh(a);
  return std::sqrt(a);
}

ExprPtr find_parameter(const ExprPtr& e) {
  if (e->kind == Kind::parameter) return e;
  for (const auto& a : e->args) {
    if (auto p = find_parameter(a)) return p;
  }
  return nullptr;
}

}  // namespace

ExprPtr parse_expression(const std::string& text, int first_line) { return Parser(lex(text, first_line)).parse(); }

std::string print_expression(const ExprPtr& e) {
  switch (e->kind) {
    case Kind::number:
      return to_string(e->value);
    case Kind::variable:
      return "x";
    case Kind::parameter:
      return e->name;
    case Kind::call:
      return e->name + "(" + print_expression(e->args[0]) + ")";
    case Kind::neg:
      return "-" + wrap(e->args[0], 3);
    case Kind::add:
      return wrap(e->args[0], 1) + " + " + wrap(e->args[1], 2);
    case Kind::sub:
      return wrap(e->args[0], 1) + " - " + wrap(e->args[1], 2);
    case Kind::mul:
      return wrap(e->args[0], 2) + "*" + wrap(e->args[1], 3);
    case Kind::div:
      return wrap(e->args[0], 2) + "/" + wrap(e->args[1], 3);
    case Kind::pow:
      return wrap(e->args[0], 5) + "^" + wrap(e->args[1], 3);
  }
  return "";
}

ExprPtr canonicalize(const ExprPtr& e) {
  if (e->kind == Kind::number) {
    if (e->value < 0) return Expr::unary(Kind::neg, Expr::number(-e->value));
    return e;
  }
  if (e->args.empty()) return e;
  auto m = std::make_shared<Expr>(*e);
  for (auto& a : m->args) a = canonicalize(a);
  if (m->kind == Kind::div && m->args[0]->kind == Kind::number && m->args[1]->kind == Kind::number &&
      m->args[1]->value != 0) {
    return Expr::number(m->args[0]->value / m->args[1]->value);
  }
  return m;
}

bool structurally_equal(const ExprPtr& a, const ExprPtr& b) {
  if (a->kind != b->kind || a->args.size() != b->args.size()) return false;
  if (a->kind == Kind::number && a->value != b->value) return false;
  if ((a->kind == Kind::parameter || a->kind == Kind::call) && a->name != b->name) return false;
  for (std::size_t i = 0; i < a->args.size(); ++i) {
    if (!structurally_equal(a->args[i], b->args[i])) return false;
  }
  return true;
}

ExprPtr bind_parameters(const ExprPtr& e, const std::map<std::string, Rational>& params) {
  if (e->kind == Kind::parameter) {
    auto it = params.find(e->name);
    if (it == params.end()) return e;
    return Expr::number(it->second);
  }
  if (e->args.empty()) return e;
  auto m = std::make_shared<Expr>(*e);
  for (auto& a : m->args) a = bind_parameters(a, params);
  return m;
}

ExprPtr differentiate(const ExprPtr& e) {
  const auto& a = e->args;
  switch (e->kind) {
    case Kind::number:
    case Kind::parameter:
      return Expr::number(0);
    case Kind::variable:
      return Expr::number(1);
    case Kind::neg:
      return mk_neg(differentiate(a[0]));
    case Kind::add:
      return mk_add(differentiate(a[0]), differentiate(a[1]));
    case Kind::sub:
      return mk_sub(differentiate(a[0]), differentiate(a[1]));
    case Kind::mul:
      return mk_add(mk_mul(differentiate(a[0]), a[1]), mk_mul(a[0], differentiate(a[1])));
    case Kind::div:
      return mk_div(mk_sub(mk_mul(differentiate(a[0]), a[1]), mk_mul(a[0], differentiate(a[1]))),
                    mk_pow(a[1], Expr::number(2)));
    case Kind::pow: {
      ExprPtr du = differentiate(a[0]);
      if (!has_variable(a[1])) {
        return mk_mul(mk_mul(a[1], mk_pow(a[0], mk_sub(a[1], Expr::number(1)))), du);
      }
      ExprPtr inner = mk_add(mk_mul(differentiate(a[1]), Expr::call("log", a[0])), mk_div(mk_mul(a[1], du), a[0]));
      return mk_mul(e, inner);
    }
    case Kind::call: {
      ExprPtr du = differentiate(a[0]);
      if (is_num(du, 0)) return Expr::number(0);
      const std::string& f = e->name;
      ExprPtr outer;
      if (f == "exp") {
        outer = e;
      } else if (f == "log") {
        return mk_div(du, a[0]);
      } else if (f == "sin") {
        outer = Expr::call("cos", a[0]);
      } else if (f == "cos") {
        outer = mk_neg(Expr::call("sin", a[0]));
      } else if (f == "tan") {
        outer = mk_add(Expr::number(1), mk_pow(e, Expr::number(2)));
      } else if (f == "tanh") {
        outer = mk_sub(Expr::number(1), mk_pow(e, Expr::number(2)));
      } else {
        return mk_div(du, mk_mul(Expr::number(2), e));
      }
      return mk_mul(outer, du);
    }
  }
  return Expr::number(0);
}

bool has_function_call(const ExprPtr& e) {
  if (e->kind == Kind::call) return true;
  return std::any_of(e->args.begin(), e->args.end(), has_function_call);
}

Complex evaluate(const ExprPtr& e, Complex x) {
  const auto& a = e->args;
  switch (e->kind) {
    case Kind::number:
      return e->value.get_d();
    case Kind::variable:
      return x;
    case Kind::parameter:
      throw ParseError("unknown identifier '" + e->name + "'", e->line, e->column);
    case Kind::neg:
      return -evaluate(a[0], x);
    case Kind::add:
      return evaluate(a[0], x) + evaluate(a[1], x);
    case Kind::sub:
      return evaluate(a[0], x) - evaluate(a[1], x);
    case Kind::mul:
      return evaluate(a[0], x) * evaluate(a[1], x);
    case Kind::div:
      return evaluate(a[0], x) / evaluate(a[1], x);
    case Kind::pow: {
      Complex b = evaluate(a[0], x);
      if (a[1]->kind == Kind::number && is_integer(a[1]->value) && abs(a[1]->value) < 1000) {
        return int_pow(b, a[1]->value.get_num().get_si());
      }
      Complex p = evaluate(a[1], x);
      if (p.imag() == 0.0 && p.real() == std::round(p.real()) && std::abs(p.real()) < 1000) {
        return int_pow(b, static_cast<long>(p.real()));
      }
      return std::pow(b, p);
    }
    case Kind::call:
      return apply(e->name, evaluate(a[0], x));
  }
  return 0.0;
}

RationalFunction to_rational_function(const ExprPtr& e, const std::map<std::string, Rational>& params) {
  using RF = RationalFunction;
  const auto& a = e->args;
  switch (e->kind) {
    case Kind::number:
      return RF::constant(e->value);
    case Kind::variable:
      return RF::x();
    case Kind::parameter: {
      auto it = params.find(e->name);
      if (it == params.end()) throw ParseError("unknown identifier '" + e->name + "'", e->line, e->column);
      return RF::constant(it->second);
    }
    case Kind::neg:
      return -to_rational_function(a[0], params);
    case Kind::add:
      return to_rational_function(a[0], params) + to_rational_function(a[1], params);
    case Kind::sub:
      return to_rational_function(a[0], params) - to_rational_function(a[1], params);
    case Kind::mul:
      return to_rational_function(a[0], params) * to_rational_function(a[1], params);
    case Kind::div: {
      RF den = to_rational_function(a[1], params);
      if (den.is_zero()) throw ParseError("division by zero", e->line, e->column);
      return to_rational_function(a[0], params) / den;
    }
    case Kind::pow: {
      RF ex = to_rational_function(a[1], params);
      if (!ex.is_constant() || !is_integer(ex.constant_value())) {
        throw ParseError("exact mode requires an integer exponent", e->line, e->column);
      }
      Rational k = ex.constant_value();
      if (abs(k) > 512) throw ParseError("exponent too large", e->line, e->column);
      RF base = to_rational_function(a[0], params);
      if (base.is_zero() && k < 0) throw ParseError("division by zero", e->line, e->column);
      return base.pow(static_cast<int>(k.get_num().get_si()));
    }
    case Kind::call:
      throw ParseError("function '" + e->name + "' is not allowed in exact mode", e->line, e->column);
  }
  return RF();
}

CoefficientFn to_coefficient(const ExprPtr& e, const std::map<std::string, Rational>& params, EvalMode mode) {
  if (mode == EvalMode::exact) return CoefficientFn(to_rational_function(e, params));
  ExprPtr bound = bind_parameters(e, params);
  if (auto p = find_parameter(bound)) {
    throw ParseError("unknown identifier '" + p->name + "'", p->line, p->column);
  }
  if (!has_variable(bound)) return CoefficientFn::constant(evaluate(bound, 0.0));
  ExprPtr d1 = differentiate(bound);
  ExprPtr d2 = differentiate(d1);
  return CoefficientFn::from_jet(
      [bound, d1, d2](double x) { return Jet{evaluate(bound, x), evaluate(d1, x), evaluate(d2, x)}; },
      print_expression(bound));
}

}  // namespace aimlinsys

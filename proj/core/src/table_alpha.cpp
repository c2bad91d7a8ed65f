#include "aimlinsys/errors.hpp"
#include "aimlinsys/riccati.hpp"
#include "aimlinsys/roots.hpp"
#include "aimlinsys/specfun.hpp"

namespace aimlinsys {

namespace {

using RF = RationalFunction;

RF X() { return RF::x(); }
RF K(const Rational& q) { return RF::constant(q); }
RF K(long q) { return RF::constant(Rational(q)); }

RF F11(const Rational& a, const Rational& c, const RF& z) { return hyp_polynomial({{a}, {c}, z}); }
RF F21(const Rational& a, const Rational& b, const Rational& c, const RF& z) {
  return hyp_polynomial({{a, b}, {c}, z});
}
RF F20(const Rational& a, const Rational& b, const RF& z) { return hyp_polynomial({{a, b}, {}, z}); }

/// y'' = F0·y' + G0·y with its truncated hypergeometric solution and the
/// displayed closed form of y'/y.
struct SecondOrderRow {
  RF F0, G0, y, log_derivative;
  Domain candidate;
};

SecondOrderRow table4_row(const TableAlphaRow& r) {
  const Rational n = r.n;
  const Rational& a = r.a;
  const Rational& b = r.b;
  const Rational& c = r.c;
  const Rational& k = r.k;
  const RF x = X();
  const Domain near_one{0.25, 1.25};
  const Domain unit{0.05, 0.95};
  const Domain sym{-0.9, 0.9};
  SecondOrderRow s;
  switch (r.row) {
    case 1: {
      RF z = x * x;
      s = {K(2) * x, K(-4 * r.n), F11(-n, Rational(1, 2), z),
           K(-4 * r.n) * x * F11(-n + 1, Rational(3, 2), z) / F11(-n, Rational(1, 2), z), {0.0, 1.0}};
      break;
    }
    case 2: {
      RF z = x * x;
      s = {K(2) * x, K(-2 * (2 * r.n + 1)), x * F11(-n, Rational(3, 2), z),
           K(1) / x - K(Rational(4 * r.n, 3)) * x * F11(-n + 1, Rational(5, 2), z) / F11(-n, Rational(3, 2), z),
           near_one};
      break;
    }
    case 3:
    case 4: {
      if (a == 0) throw ParameterError("Table IV rows 3-4 require a != 0");
      RF u = K(a) * x + K(b);
      RF z = u * u / K(2 * a);
      if (r.row == 3) {
        s = {u, K(-2 * n * a), F11(-n, Rational(1, 2), z),
             K(-2 * n) * u * F11(-n + 1, Rational(3, 2), z) / F11(-n, Rational(1, 2), z), near_one};
      } else {
        s = {u, K(-(2 * n + 1) * a), u * F11(-n, Rational(3, 2), z),
             K(a) / u - K(2 * n / 3) * u * F11(-n + 1, Rational(5, 2), z) / F11(-n, Rational(3, 2), z), near_one};
      }
      break;
    }
    case 5: {
      if (c == 0) throw ParameterError("Table IV row 5 requires c != 0");
      RF z = K(b) * x;
      s = {K(b) - K(c) / x, K(-n * b) / x, F11(-n, c, z),
           K(-n * b / c) * F11(-n + 1, c + 1, z) / F11(-n, c, z), near_one};
      break;
    }
    case 6: {
      if (c == 0) throw ParameterError("Table IV row 6 requires c != 0");
      RF w = x * (K(1) - x);
      s = {(K(1 - 2 * n) * x - K(c)) / w, K(n * n) / w, F21(-n, -n, c, x),
           K(n * n / c) * F21(-n + 1, -n + 1, c + 1, x) / F21(-n, -n, c, x), unit};
      break;
    }
    case 7: {
      if (c == 0) throw ParameterError("Table IV row 7 requires c != 0");
      RF w = x * (K(1) - x);
      s = {(K(b + 1 - n) * x - K(c)) / w, K(-n * b) / w, F21(-n, b, c, x),
           K(-n * b / c) * F21(-n + 1, b + 1, c + 1, x) / F21(-n, b, c, x), unit};
      break;
    }
    case 8: {
      if (b == 0) throw ParameterError("Table IV row 8 requires b != 0");
      RF z = -x / K(b);
      RF x2 = x * x;
      s = {-(K(a) * x + K(b)) / x2, K(n * (n + a - 1)) / x2, F20(-n, n + a - 1, z),
           K(n * (n + a - 1) / b) * F20(-n + 1, n + a, z) / F20(-n, n + a - 1, z), near_one};
      break;
    }
    case 9: {
      RF z = (K(1) - x) / K(2);
      RF w = K(1) - x * x;
      s = {K(2 * (k + 1)) * x / w, K(-n * (n + 2 * k + 1)) / w, F21(-n, n + 2 * k + 1, k + 1, z),
           K(n * (n + 2 * k + 1) / (2 * (k + 1))) * F21(-n + 1, n + 2 * k + 2, k + 2, z) /
               F21(-n, n + 2 * k + 1, k + 1, z),
           sym};
      break;
    }
    case 10: {
      RF z = (K(1) - x) / K(2);
      RF w = K(1) - x * x;
      Rational half(1, 2);
      s = {K(2 * k + 1) * x / w, K(-n * (n + 2 * k)) / w, F21(-n, n + 2 * k, k + half, z),
           K(n * (n + 2 * k) / (2 * k + 1)) * F21(-n + 1, n + 2 * k + 1, k + 3 * half, z) /
               F21(-n, n + 2 * k, k + half, z),
           sym};
      break;
    }
    default:
      throw ParameterError("Table IV has rows 1-10");
  }
  return s;
}

SecondOrderRow table56_row(const TableAlphaRow& r) {
  const Rational n = r.n;
  const Rational& a = r.a;
  const Rational& b = r.b;
  const Rational& c = r.c;
  const Rational& k = r.k;
  const RF x = X();
  const Domain near_one{0.25, 1.25};
  const Domain sym{-0.9, 0.9};
  RF half_arg = (K(1) - x) / K(2);
  RF w = K(1) - x * x;
  SecondOrderRow s;
  switch (r.row) {
    case 1:
      s = {K(2) * x, K(-2 * n), RF(hermite(static_cast<unsigned>(r.n))), RF(), {0.0, 1.0}};
      break;
    case 2:
    case 3: {
      if (a == 0) throw ParameterError("rows 2-3 require a != 0");
      if (r.row == 2 && r.n % 2 != 0) throw ParameterError("row 2 requires even n");
      if (r.row == 3 && r.n % 2 == 0) throw ParameterError("row 3 requires odd n");
      RF u = K(a) * x + K(b);
      RF z = u * u / K(2 * a);
      RF y = r.row == 2 ? F11(-n / 2, Rational(1, 2), z) : u * F11(-(n - 1) / 2, Rational(3, 2), z);
      s = {u, K(-a * n), y, RF(), near_one};
      break;
    }
    case 4:
      s = {K(b) - K(c) / x, K(-b * n) / x, F11(-n, c, K(b) * x), RF(), near_one};
      break;
    case 5: {
      RF v = x * (K(1) - x);
      s = {(K(1 - 2 * n) * x - K(c)) / v, K(n * n) / v, F21(-n, -n, c, x), RF(), {0.05, 0.95}};
      break;
    }
    case 6:
      s = {K(2) * x / w, K(-n * (n + 1)) / w, F21(-n, n + 1, 1, half_arg), RF(), sym};
      break;
    case 7:
      s = {(K(a + b + 2) * x + K(a - b)) / w, K(-n * (n + a + b + 1)) / w, F21(-n, n + a + b + 1, a + 1, half_arg),
           RF(), sym};
      break;
    case 8:
      s = {K(3) * x / w, K(-n * (n + 2)) / w, F21(-n, n + 2, Rational(3, 2), half_arg), RF(), sym};
      break;
    case 9:
      s = {K(1 + 2 * k) * x / w, K(-n * (n + 2 * k)) / w, F21(-n, n + 2 * k, k + Rational(1, 2), half_arg), RF(),
           sym};
      break;
    case 10:
      s = {K(2 * (1 + k)) * x / w, K(-n * (n + 2 * k + 1)) / w, F21(-n, n + 2 * k + 1, k + 1, half_arg), RF(), sym};
      break;
    case 11:
      s = {K(-2) * (K(1) + x) / (x * x), K(n * (n + 1)) / (x * x), F20(-n, n + 1, -x / K(2)), RF(), near_one};
      break;
    case 12:
      if (b == 0) throw ParameterError("row 12 requires b != 0");
      s = {-(K(a) * x + K(b)) / (x * x), K(n * (n + a - 1)) / (x * x), F20(-n, n + a - 1, -x / K(b)), RF(),
           near_one};
      break;
    default:
      throw ParameterError("Tables V and VI have rows 1-12");
  }
  RF dy = s.y.derivative();
  s.log_derivative = dy / s.y;
  return s;
}

Domain pick_domain(const TableAlphaRow& r, const Domain& candidate, const std::vector<Polynomial>& polys) {
  if (r.domain) {
    for (const auto& p : polys) {
      if (p.is_zero()) throw DomainRestrictionError("a required polynomial vanishes identically", r.domain->lo);
      auto roots = real_roots(p, r.domain->lo, r.domain->hi);
      if (!roots.empty()) {
        throw DomainRestrictionError("polynomial " + p.to_string() + " vanishes inside the domain", roots.front());
      }
    }
    return *r.domain;
  }
  return widest_root_free_gap(polys, candidate);
}

void add_denominators(std::vector<Polynomial>& polys, const RF& f) {
  if (!f.den().is_constant()) polys.push_back(f.den());
}

}  // namespace

int table_rows(AlphaTable t) { return t == AlphaTable::IV ? 10 : 12; }

TableAlphaResult table_alpha(const TableAlphaRow& row) {
  if (row.n < 1) throw ParameterError("n must be positive");
  TableAlphaResult out;
  if (row.table == AlphaTable::IV) {
    SecondOrderRow s = table4_row(row);
    RF P = s.F0;
    RF Kc = -s.G0;
    std::vector<Polynomial> polys{s.y.num()};
    add_denominators(polys, P);
    add_denominators(polys, Kc);
    add_denominators(polys, s.log_derivative);
    if (row.R.is_exact()) {
      polys.push_back(row.R.exact().num());
      add_denominators(polys, row.R.exact());
    }
    Domain d = pick_domain(row, s.candidate, polys);
    const CoefficientFn& R = row.R;
    CoefficientFn Rp = R.diff();
    CoefficientFn T = Rp / (R * R) - CoefficientFn(P) / R;
    out.system = {Rp / R, CoefficientFn(Kc) / R - T.diff(), -R, CoefficientFn(P), d};
    RF Q = s.y.derivative() / s.y;
    out.alpha.fn = (CoefficientFn(Q) + Rp / R - CoefficientFn(P)) / R;
    out.alpha.provenance = Provenance::table;
    out.alpha.description = "alpha = (Q + R'/R - P)/R, Q = " + Q.to_string();
    out.y = s.y.num();
    out.ratio = Q;
    out.displayed = s.log_derivative;
    out.F0 = s.F0;
    out.G0 = s.G0;
    return out;
  }

  SecondOrderRow s = table56_row(row);
  bool dual = row.table == AlphaTable::VI;
  std::vector<Polynomial> polys{dual ? s.y.derivative().num() : s.y.num()};
  add_denominators(polys, s.F0);
  add_denominators(polys, s.G0);
  Domain d = pick_domain(row, s.candidate, polys);
  FGSpec spec{s.F0, s.G0, row.lambda0, row.rho0, dual ? FGDirection::dual : FGDirection::forward, d,
                     row.anchor};
  auto [sys, alpha] = alpha_from_fg(spec, row.n);
  out.system = sys;
  out.alpha = alpha;
  out.alpha.provenance = Provenance::table;
  FGState st = fg_iterate(s.F0, s.G0, row.n);
  const RF& F = st.F[static_cast<std::size_t>(row.n - 1)];
  const RF& G = st.G[static_cast<std::size_t>(row.n - 1)];
  out.ratio = dual ? F / G : G / F;
  out.displayed = dual ? -(s.y / s.y.derivative()) : -s.log_derivative;
  out.y = s.y.num();
  out.F0 = s.F0;
  out.G0 = s.G0;
  return out;
}

}  // namespace aimlinsys

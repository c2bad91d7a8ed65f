#include "aimlinsys/solver.hpp"

#include <cmath>
#include <sstream>

#include "aimlinsys/errors.hpp"
#include "aimlinsys/rational.hpp"

namespace aimlinsys {

bool same_values(const CoefficientFn& a, const CoefficientFn& b, const Domain& d) {
  if (a.is_exact() && b.is_exact()) return a.exact() == b.exact();
  if (a.kind() == CoefficientFn::Kind::constant && b.kind() == CoefficientFn::Kind::constant) {
    return a.constant_value() == b.constant_value();
  }
  for (int i = 0; i < 64; ++i) {
    double x = grid_point(d, i, 64);
    Complex u = a(x);
    Complex v = b(x);
    if (std::abs(u - v) > 1e-12 * std::max({1.0, std::abs(u), std::abs(v)})) return false;
  }
  return true;
}

std::optional<RankOneSign> rank_one_pattern(const LinearSystem& sys) {
  const Domain& d = sys.domain;
  if (same_values(sys.lambda0, sys.s0, d) && same_values(sys.omega0, sys.rho0, d)) return RankOneSign::plus;
  if (same_values(sys.lambda0, -sys.s0, d) && same_values(sys.omega0, -sys.rho0, d)) return RankOneSign::minus;
  return std::nullopt;
}

namespace {

std::string over(const BigInt& num, const std::string& rest, const BigInt& den) {
  std::string body = num == 0 ? rest : num.get_str() + rest;
  if (den == 1) return body;
  return "(" + body + ")/" + den.get_str();
}

}  // namespace

std::array<std::string, 2> constant_alpha_text(const Rational& lam, const Rational& s, const Rational& om,
                                               const Rational& rho) {
  if (om == 0) {
    if (lam == rho) return {"0", "0"};
    std::string a = to_string(Rational(s / (lam - rho)));
    return {a, a};
  }
  Rational disc = (lam - rho) * (lam - rho) + 4 * om * s;
  Rational A = (rho - lam) / (2 * om);
  Rational mag = disc < 0 ? Rational(-disc) : disc;
  std::optional<Rational> root = exact_sqrt(mag);
  std::array<std::string, 2> out;
  for (int k = 0; k < 2; ++k) {
    const int sign = k == 0 ? 1 : -1;
    if (root) {
      Rational B = sign * *root / (2 * om);
      if (disc >= 0) {
        out[static_cast<std::size_t>(k)] = to_string(Rational(A + B));
        continue;
      }
      BigInt den = lcm(A.get_den(), B.get_den());
      BigInt an = A.get_num() * (den / A.get_den());
      BigInt bn = B.get_num() * (den / B.get_den());
      std::string im_coef = abs(bn) == 1 ? std::string() : BigInt(abs(bn)).get_str();
      std::string imag = (bn < 0 ? "-" : (an == 0 ? "" : "+")) + im_coef + "i";
      out[static_cast<std::size_t>(k)] = over(an, imag, den);
    } else {
      std::string sq = disc < 0 ? "sqrt(" + to_string(mag) + ")i" : "sqrt(" + to_string(mag) + ")";
      out[static_cast<std::size_t>(k)] =
          "(" + to_string(Rational(rho - lam)) + (sign > 0 ? " + " : " - ") + sq + ")/" + to_string(Rational(2 * om));
    }
  }
  return out;
}

namespace {

Complex constant_of(const CoefficientFn& c) {
  if (c.is_exact()) return c.exact().constant_value().get_d();
  return c.constant_value();
}

std::optional<SolvedSystem> try_path(const std::string& path, const LinearSystem& sys, const SolveOptions& opt,
                                     double x0) {
  const Domain& d = sys.domain;
  if (path == "corollary") {
    auto sign = rank_one_pattern(sys);
    if (!sign) return std::nullopt;
    SolvedSystem out{solve_rank_one(sys.lambda0, sys.omega0, *sign, opt.C1, opt.C2, x0, d), path, "", {}, {}, {}};
    out.alpha_text = *sign == RankOneSign::plus ? "1" : "-1";
    return out;
  }
  if (path == "const-coef") {
    if (!sys.is_constant()) return std::nullopt;
    Complex l = constant_of(sys.lambda0), s = constant_of(sys.s0), w = constant_of(sys.omega0),
            r = constant_of(sys.rho0);
    try {
      ConstCoefSolution cs = solve_constant(l, s, w, r);
      SolvedSystem out{cs.evaluator(opt.C1, opt.C2, x0, d), path, "", {}, cs, {}};
      if (sys.is_exact()) {
        out.alpha_text = constant_alpha_text(sys.lambda0.exact().constant_value(), sys.s0.exact().constant_value(),
                                             sys.omega0.exact().constant_value(),
                                             sys.rho0.exact().constant_value())[0];
      } else {
        std::ostringstream os;
        os.precision(17);
        os << cs.alpha_plus.real();
        if (cs.alpha_plus.imag() != 0.0) {
          os << (cs.alpha_plus.imag() < 0 ? "-" : "+") << std::abs(cs.alpha_plus.imag()) << "i";
        }
        out.alpha_text = os.str();
      }
      return out;
    } catch (const DefectiveSystemError&) {
      SolvedSystem out{solve_triangular(l, s, opt.C1, opt.C2, x0, d), "triangular", "0", {}, {}, {}};
      return out;
    }
  }
  if (path == "aim-alpha" || path == "aim-beta") {
    if (!sys.is_exact()) return std::nullopt;
    std::optional<TerminationCertificate> cert;
    Branch branch = path == "aim-alpha" ? Branch::alpha : Branch::beta;
    cert = find_termination(sys, opt.n_max, branch);
    if (!cert) return std::nullopt;
    AlphaFunction a{CoefficientFn(cert->ratio), Provenance::aim, cert->ratio.to_string(), std::nullopt};
    SolutionEvaluator ev = cert->kind == RatioKind::alpha ? build_solution_from_alpha(sys, a, opt.C1, opt.C2, x0)
                                                          : build_solution_from_beta(sys, a, opt.C1, opt.C2, x0);
    return SolvedSystem{ev, cert->kind == RatioKind::alpha ? "aim-alpha" : "aim-beta", cert->ratio.to_string(), cert,
                        {}, {}};
  }
  if (path == "first-iteration") {
    if (sys.s0.is_identically_zero() || sys.lambda0.is_identically_zero()) return std::nullopt;
    auto ev = solve_first_iteration(sys, opt.C1, opt.C2, x0);
    if (!ev) return std::nullopt;
    return SolvedSystem{*ev, path, (sys.s0 / sys.lambda0).to_string(), {}, {}, {}};
  }
  if (path == "user-alpha") {
    if (!opt.user_alpha) return std::nullopt;
    AlphaFunction a{*opt.user_alpha, Provenance::user, opt.user_alpha->to_string(), std::nullopt};
    return SolvedSystem{build_solution_from_alpha(sys, a, opt.C1, opt.C2, x0), path, a.description, {}, {}, {}};
  }
  if (path == "separable") {
    SeparabilityClass cls = detect_separable(sys);
    if (cls.kind == SeparabilityClass::Kind::none) return std::nullopt;
    AlphaFunction a = solve_separable(sys, cls, x0, opt.poles);
    SolutionEvaluator ev = build_solution_from_alpha(sys, a, opt.C1, opt.C2, x0);
    return SolvedSystem{ev, path, a.description, {}, {}, cls};
  }
  throw ParameterError("unknown solution path '" + path + "'");
}

}  // namespace

std::optional<SolvedSystem> solve_system(const LinearSystem& sys, const SolveOptions& opt) {
  double x0 = opt.anchor.value_or(sys.domain.midpoint());
  if (x0 < sys.domain.lo || x0 > sys.domain.hi) throw ParameterError("anchor x0 lies outside the domain");
  if (opt.path != "auto") return try_path(opt.path, sys, opt, x0);
  if (opt.user_alpha) return try_path("user-alpha", sys, opt, x0);
  if (auto r = try_path("corollary", sys, opt, x0)) return r;
  if (auto r = try_path("const-coef", sys, opt, x0)) return r;
  if (sys.is_exact()) {
    try {
      if (auto r = try_path("aim-alpha", sys, opt, x0)) return r;
    } catch (const DegenerateRatioError&) {
    }
    try {
      if (auto r = try_path("aim-beta", sys, opt, x0)) return r;
    } catch (const DegenerateRatioError&) {
    }
  }
  try {
    if (auto r = try_path("first-iteration", sys, opt, x0)) return r;
  } catch (const DegenerateRatioError&) {
  }
  return try_path("separable", sys, opt, x0);
}

}  // namespace aimlinsys

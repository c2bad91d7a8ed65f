#include "aimlinsys/closed_form.hpp"

#include <cmath>

#include "aimlinsys/errors.hpp"

namespace aimlinsys {

SolutionEvaluator::SolutionEvaluator(BasisFn first, BasisFn second, Complex C1, Complex C2, double x0, Domain domain,
                                     SolutionBranch branch)
    : first_(std::move(first)),
      second_(std::move(second)),
      c1_(C1),
      c2_(C2),
      x0_(x0),
      domain_(domain),
      branch_(branch) {}

Pair SolutionEvaluator::operator()(double x) const {
  Pair a = first_(x);
  Pair b = second_(x);
  return {c1_ * a[0] + c2_ * b[0], c1_ * a[1] + c2_ * b[1]};
}

Pair SolutionEvaluator::basis(int k, double x) const { return k == 0 ? first_(x) : second_(x); }

SolutionEvaluator SolutionEvaluator::with_constants(Complex C1, Complex C2) const {
  SolutionEvaluator out = *this;
  out.c1_ = C1;
  out.c2_ = C2;
  return out;
}

Domain evaluation_domain(const Domain& d) {
  double m = 1e-3 * d.width();
  return {d.lo - m, d.hi + m};
}

ConstCoefSolution solve_constant(Complex lam, Complex s, Complex om, Complex rho, int root) {
  ConstCoefSolution out;
  const Complex zero(0.0);
  if (om == zero) {
    if (lam == rho && s != zero) {
      throw DefectiveSystemError(
          "omega0 = 0 and lambda0 = rho0 with s0 != 0: defective eigenvalue, use the triangular solver");
    }
    Complex a = lam == rho ? zero : s / (lam - rho);
    out.alpha_plus = out.alpha_minus = out.alpha = a;
  } else {
    Complex disc = (lam - rho) * (lam - rho) + 4.0 * om * s;
    Complex sq = std::sqrt(disc);
    out.alpha_plus = ((rho - lam) + sq) / (2.0 * om);
    out.alpha_minus = ((rho - lam) - sq) / (2.0 * om);
    out.alpha = root == 0 ? out.alpha_plus : out.alpha_minus;
  }
  Complex a = out.alpha;
  out.exponents = {lam + a * om, rho - a * om};
  Complex kappa = lam - rho + 2.0 * om * a;
  auto& M = out.coefficients;
  if (om != zero && kappa == zero) {
    out.repeated = true;
    M[0][0] = {1.0, -a};
    M[0][1] = {-a * om, 0.0};
    M[1][0] = {0.0, 1.0};
    M[1][1] = {om, 0.0};
  } else {
    Complex q = om == zero ? zero : om / kappa;
    M[0][0] = {1.0 - a * q, 0.0};
    M[0][1] = {0.0, -a};
    M[1][0] = {q, 0.0};
    M[1][1] = {0.0, 1.0};
  }
  return out;
}

SolutionEvaluator ConstCoefSolution::evaluator(Complex C1, Complex C2, double x0, const Domain& d) const {
  auto M = coefficients;
  auto r = exponents;
  bool rep = repeated;
  auto modes = [r, rep, x0](double x) -> Pair {
    double t = x - x0;
    if (rep) {
      Complex e = std::exp(r[0] * t);
      return {e, t * e};
    }
    return {std::exp(r[0] * t), std::exp(r[1] * t)};
  };
  auto make = [M, modes](int c) {
    return [M, modes, c](double x) -> Pair {
      Pair m = modes(x);
      return {M[0][0][c] * m[0] + M[0][1][c] * m[1], M[1][0][c] * m[0] + M[1][1][c] * m[1]};
    };
  };
  SolutionEvaluator ev(make(0), make(1), C1, C2, x0, d, SolutionBranch::const_coef);
  return ev;
}

SolutionEvaluator solve_triangular(Complex lam, Complex s, Complex C1, Complex C2, double x0, const Domain& d) {
  auto first = [lam, x0](double x) -> Pair { return {std::exp(lam * (x - x0)), 0.0}; };
  auto second = [lam, s, x0](double x) -> Pair {
    double t = x - x0;
    Complex e = std::exp(lam * t);
    return {s * t * e, e};
  };
  return SolutionEvaluator(first, second, C1, C2, x0, d, SolutionBranch::triangular);
}

namespace {

void check_anchor(const Domain& d, double x0) {
  if (x0 < d.lo || x0 > d.hi) throw ParameterError("anchor x0 lies outside the domain");
}

}  // namespace

SolutionEvaluator build_solution_from_alpha(const LinearSystem& system, const AlphaFunction& alpha, Complex C1,
                                            Complex C2, double x0) {
  Domain d = alpha.valid.value_or(system.domain);
  check_anchor(d, x0);
  Domain ext = evaluation_domain(d);
  const CoefficientFn& a = alpha.fn;
  CoefficientFn A1 = integral(a * system.omega0 + system.lambda0, x0, ext);
  CoefficientFn A2 = integral(system.rho0 - a * system.omega0, x0, ext);
  CoefficientFn A4 = integral(system.omega0 * exp(A1 - A2), x0, ext);
  auto first = [a, A1, A2, A4](double x) -> Pair {
    Complex p2 = std::exp(A2(x)) * A4(x);
    return {std::exp(A1(x)) - a(x) * p2, p2};
  };
  auto second = [a, A2](double x) -> Pair {
    Complex p2 = std::exp(A2(x));
    return {-a(x) * p2, p2};
  };
  SolutionEvaluator ev(first, second, C1, C2, x0, d, SolutionBranch::alpha);
  ev.note = alpha.description;
  return ev;
}

SolutionEvaluator build_solution_from_beta(const LinearSystem& system, const AlphaFunction& beta, Complex C1p,
                                           Complex C2p, double x0) {
  SolutionEvaluator mirror = build_solution_from_alpha(system.swapped(), beta, 1.0, 0.0, x0);
  auto swap_first = [mirror](double x) -> Pair {
    Pair p = mirror.basis(0, x);
    return {p[1], p[0]};
  };
  auto swap_second = [mirror](double x) -> Pair {
    Pair p = mirror.basis(1, x);
    return {p[1], p[0]};
  };
  SolutionEvaluator ev(swap_first, swap_second, C1p, C2p, x0, mirror.domain(), SolutionBranch::beta);
  ev.note = beta.description;
  return ev;
}

std::optional<SolutionEvaluator> solve_first_iteration(const LinearSystem& system, Complex C1, Complex C2,
                                                       std::optional<double> anchor) {
  const Domain& d = system.domain;
  double x0 = anchor.value_or(d.midpoint());
  check_anchor(d, x0);
  if (system.lambda0.is_identically_zero()) throw DegenerateRatioError("lambda0 is identically zero");
  if (system.s0.is_identically_zero()) return std::nullopt;
  CoefficientFn r = system.lambda0 / system.s0;
  if (system.is_exact()) {
    const RationalFunction& re = r.exact();
    RationalFunction cond = re.derivative() - re * system.rho0.exact() + system.omega0.exact();
    if (!cond.is_zero()) return std::nullopt;
  } else {
    bool all_zero = true;
    for (int k = 0; k < 64; ++k) {
      double x = grid_point(d, k, 64);
      Jet j = r.jet(x);
      Complex rho = system.rho0(x);
      Complex om = system.omega0(x);
      if (system.lambda0(x) != Complex(0.0)) all_zero = false;
      double scale = 1.0 + std::abs(j.d1) + std::abs(j.v * rho) + std::abs(om);
      if (std::abs(j.d1 - j.v * rho + om) > 1e-10 * scale) return std::nullopt;
    }
    if (all_zero) throw DegenerateRatioError("lambda0 vanishes on the whole grid");
  }
  Domain ext = evaluation_domain(d);
  CoefficientFn E = integral(system.lambda0 + system.s0 * system.omega0 / system.lambda0, x0, ext);
  CoefficientFn inner = integral(system.omega0 / r * exp(E), x0, ext);
  auto first = [r, E, inner](double x) -> Pair {
    Complex rv = r(x);
    Complex p2 = rv * inner(x);
    return {std::exp(E(x)) - p2 / rv, p2};
  };
  auto second = [r](double x) -> Pair { return {-1.0, r(x)}; };
  SolutionEvaluator ev(first, second, C1, C2, x0, d, SolutionBranch::first_iteration);
  ev.note = "alpha = s0/lambda0 = " + (system.s0 / system.lambda0).to_string();
  return ev;
}

LinearSystem rank_one_system(const CoefficientFn& f, const CoefficientFn& g, RankOneSign sign, const Domain& d) {
  if (sign == RankOneSign::plus) return {f, f, g, g, d};
  return {f, -f, g, -g, d};
}

SolutionEvaluator solve_rank_one(const CoefficientFn& f, const CoefficientFn& g, RankOneSign sign, Complex C1,
                                 Complex C2, double x0, const Domain& d) {
  check_anchor(d, x0);
  Domain ext = evaluation_domain(d);
  bool plus = sign == RankOneSign::plus;
  CoefficientFn S = integral(plus ? f + g : f - g, x0, ext);
  CoefficientFn I = integral(g * exp(S), x0, ext);
  auto first = [S, I, plus](double x) -> Pair {
    Complex i = I(x);
    Complex e = std::exp(S(x));
    return {plus ? e - i : e + i, i};
  };
  auto second = [plus](double) -> Pair { return {-1.0, plus ? 1.0 : -1.0}; };
  return SolutionEvaluator(first, second, C1, C2, x0, d, SolutionBranch::corollary);
}

std::string to_string(SolutionBranch b) {
  switch (b) {
    case SolutionBranch::alpha:
      return "alpha";
    case SolutionBranch::beta:
      return "beta";
    case SolutionBranch::const_coef:
      return "const-coef";
    case SolutionBranch::first_iteration:
      return "first-iteration";
    case SolutionBranch::corollary:
      return "corollary";
    case SolutionBranch::triangular:
      return "triangular";
  }
  return "unknown";
}

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::aim:
      return "aim";
    case Provenance::riccati_separable:
      return "riccati-separable";
    case Provenance::fg_ratio:
      return "fg-ratio";
    case Provenance::table:
      return "table";
    case Provenance::user:
      return "user";
  }
  return "unknown";
}

}  // namespace aimlinsys

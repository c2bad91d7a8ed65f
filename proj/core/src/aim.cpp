#include "aimlinsys/aim.hpp"

#include "aimlinsys/errors.hpp"

namespace aimlinsys {

namespace {

const RationalFunction& exact_of(const CoefficientFn& c, const char* name) {
  if (!c.is_exact()) throw ParameterError(std::string("exact iteration needs an exact ") + name);
  return c.exact();
}

}  // namespace

AimIterator::AimIterator(const LinearSystem& system)
    : l0_(exact_of(system.lambda0, "lambda0")),
      s0_(exact_of(system.s0, "s0")),
      w0_(exact_of(system.omega0, "omega0")),
      r0_(exact_of(system.rho0, "rho0")) {
  state_.iterates.push_back({l0_, s0_, w0_, r0_});
  state_.deltas.emplace_back();
  state_.Deltas.emplace_back();
  state_.etas.push_back(s0_ * w0_ - l0_ * r0_);
}

void AimIterator::step() {
  int next = state_.depth() + 1;
  try {
    const AimLevel& p = state_.iterates.back();
    AimLevel q{p.lambda.derivative() + p.lambda * l0_ + p.s * w0_, p.s.derivative() + p.lambda * s0_ + p.s * r0_,
               p.omega.derivative() + p.omega * l0_ + p.rho * w0_, p.rho.derivative() + p.omega * s0_ + p.rho * r0_};
    state_.deltas.push_back(q.lambda * p.s - p.lambda * q.s);
    state_.Deltas.push_back(q.omega * p.rho - p.omega * q.rho);
    state_.etas.push_back(q.s * q.omega - q.lambda * q.rho);
    state_.iterates.push_back(std::move(q));
  } catch (const ResourceError& e) {
    throw ResourceError("degree guard exceeded at iteration " + std::to_string(next) + ": " + e.what());
  }
}

AimState aim_iterate(const LinearSystem& system, int n_max) {
  if (n_max < 1) throw ParameterError("n_max must be at least 1");
  AimIterator it(system);
  for (int k = 0; k < n_max; ++k) it.step();
  return it.state();
}

RationalFunction delta_product_formula(const Rational& a, const Rational& b, const Rational& c, const Rational& d,
                                       int n) {
  Rational prod = 1;
  for (int m = 0; m < n; ++m) prod *= Rational(m * m) - m * (a + d) + a * d - b * c;
  Rational lead = -b * prod;
  return RationalFunction(Polynomial::constant(lead), Polynomial::monomial(1, 2 * n + 1));
}

bool delta_formula_check(const Rational& a, const Rational& b, const Rational& c, const Rational& d, int n) {
  if (n < 1) throw ParameterError("n must be positive");
  RationalFunction inv_x(Polynomial::constant(1), Polynomial::x());
  LinearSystem sys{RationalFunction::constant(a) * inv_x, RationalFunction::constant(b) * inv_x,
                   RationalFunction::constant(c) * inv_x, RationalFunction::constant(d) * inv_x, {1.0, 2.0}};
  AimState st = aim_iterate(sys, n);
  return st.deltas[static_cast<std::size_t>(n)] == delta_product_formula(a, b, c, d, n);
}

std::vector<Rational> rational_fixed_points(const LinearSystem& system, RatioKind kind) {
  std::vector<Rational> out;
  if (!system.is_exact() || !system.is_constant()) return out;
  Rational l = system.lambda0.exact().constant_value();
  Rational s = system.s0.exact().constant_value();
  Rational w = system.omega0.exact().constant_value();
  Rational r = system.rho0.exact().constant_value();
  if (kind == RatioKind::beta) {
    std::swap(l, r);
    std::swap(s, w);
  }
  // ω α² + (λ-ρ) α - s = 0
  Rational A = w;
  Rational B = l - r;
  Rational C = -s;
  if (A == 0) {
    if (B != 0) out.push_back(-C / B);
    else if (C == 0) out.push_back(0);
    return out;
  }
  Rational disc = B * B - 4 * A * C;
  auto root = exact_sqrt(disc);
  if (!root) return out;
  Rational plus = (-B + *root) / (2 * A);
  Rational minus = (-B - *root) / (2 * A);
  out.push_back(plus);
  if (minus != plus) out.push_back(minus);
  return out;
}

std::optional<TerminationCertificate> find_termination(const LinearSystem& system, int n_max, Branch branch) {
  if (n_max < 1) throw ParameterError("n_max must be at least 1");
  bool want_alpha = branch != Branch::beta;
  bool want_beta = branch != Branch::alpha;
  AimIterator it(system);
  for (int n = 0; n <= n_max; ++n) {
    it.step();
    const AimState& st = it.state();
    const AimLevel& lv = st.iterates[static_cast<std::size_t>(n)];
    std::size_t k = static_cast<std::size_t>(n) + 1;
    if (want_alpha && st.deltas[k].is_zero()) {
      if (lv.lambda.is_zero()) {
        throw DegenerateRatioError("delta_" + std::to_string(n + 1) + " vanishes but lambda_" + std::to_string(n) +
                                   " is identically zero");
      }
      return TerminationCertificate{n, RatioKind::alpha, lv.s / lv.lambda, TerminationCertificate::Source::iteration};
    }
    if (want_beta && st.Deltas[k].is_zero()) {
      if (lv.rho.is_zero()) {
        throw DegenerateRatioError("Delta_" + std::to_string(n + 1) + " vanishes but rho_" + std::to_string(n) +
                                   " is identically zero");
      }
      return TerminationCertificate{n, RatioKind::beta, lv.omega / lv.rho, TerminationCertificate::Source::iteration};
    }
  }
  if (system.is_constant()) {
    for (RatioKind kind : {RatioKind::alpha, RatioKind::beta}) {
      if ((kind == RatioKind::alpha && !want_alpha) || (kind == RatioKind::beta && !want_beta)) continue;
      auto roots = rational_fixed_points(system, kind);
      if (!roots.empty()) {
        return TerminationCertificate{0, kind, RationalFunction::constant(roots.front()),
                                      TerminationCertificate::Source::constant_fixed_point};
      }
    }
  }
  return std::nullopt;
}

RationalFunction eta(const LinearSystem& system, int n) {
  if (n < 0) throw ParameterError("n must be nonnegative");
  if (n == 0) {
    AimIterator it(system);
    return it.state().etas.front();
  }
  return aim_iterate(system, n).etas[static_cast<std::size_t>(n)];
}

FGState fg_iterate(const CoefficientFn& F0c, const CoefficientFn& G0c, int n_max) {
  if (n_max < 1) throw ParameterError("n_max must be at least 1");
  const RationalFunction& F0 = exact_of(F0c, "F0");
  const RationalFunction& G0 = exact_of(G0c, "G0");
  FGState st;
  st.F.push_back(F0);
  st.G.push_back(G0);
  st.fg_deltas.emplace_back();
  for (int n = 1; n <= n_max; ++n) {
    try {
      const RationalFunction& Fp = st.F.back();
      const RationalFunction& Gp = st.G.back();
      RationalFunction Fn = Fp.derivative() + Gp + F0 * Fp;
      RationalFunction Gn = Gp.derivative() + G0 * Fp;
      st.fg_deltas.push_back(Fn * Gp - Fp * Gn);
      st.F.push_back(std::move(Fn));
      st.G.push_back(std::move(Gn));
    } catch (const ResourceError& e) {
      throw ResourceError("degree guard exceeded at iteration " + std::to_string(n) + ": " + e.what());
    }
  }
  return st;
}

std::string to_string(RatioKind k) { return k == RatioKind::alpha ? "alpha" : "beta"; }

std::string to_string(TerminationCertificate::Source s) {
  return s == TerminationCertificate::Source::iteration ? "iteration" : "constant_fixed_point";
}

}  // namespace aimlinsys

#include "aimlinsys/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "aimlinsys/errors.hpp"

namespace aimlinsys {

namespace {

using State = std::array<double, 4>;

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200, e6 = 22.0 / 525,
                 e7 = -1.0 / 40;

struct Rhs {
  const LinearSystem& sys;
  State operator()(double x, const State& y) const {
    Complex p1(y[0], y[1]);
    Complex p2(y[2], y[3]);
    Complex d1 = sys.lambda0(x) * p1 + sys.s0(x) * p2;
    Complex d2 = sys.omega0(x) * p1 + sys.rho0(x) * p2;
    return {d1.real(), d1.imag(), d2.real(), d2.imag()};
  }
};

State axpy(const State& y, double h, std::initializer_list<std::pair<double, const State*>> terms) {
  State out = y;
  for (const auto& [c, k] : terms) {
    for (int i = 0; i < 4; ++i) out[i] += h * c * (*k)[i];
  }
  return out;
}

/// One direction: x0 → x_end through the ordered sample targets.
void integrate_leg(const Rhs& f, double x0, const State& y0, const std::vector<double>& targets,
                   std::vector<TrajectoryPoint>& out, Trajectory& traj, const OracleOptions& opt) {
  if (targets.empty()) return;
  double dir = targets.back() > x0 ? 1.0 : -1.0;
  double span = std::abs(targets.back() - x0);
  double x = x0;
  State y = y0;
  State k1 = f(x, y);
  double h_prop = dir * std::min(span, 1e-3 * std::max(span, 1e-3));
  double err_prev = 1e-4;
  std::size_t next = 0;
  long steps = 0;
  while (next < targets.size()) {
    if (++steps > opt.max_steps) throw StepUnderflowError("oracle exceeded its step budget", x);
    double target = targets[next];
    bool clipped = (x + h_prop - target) * dir >= 0;
    double h = clipped ? target - x : h_prop;
    if (clipped && std::abs(h) <= 1e-15 * std::max(1.0, std::abs(x))) {
      out.push_back({target, {y[0], y[1]}, {y[2], y[3]}});
      ++next;
      continue;
    }
    if (std::abs(h) < 1e-14 * std::max(1.0, std::abs(x))) throw StepUnderflowError("oracle step size underflow", x);
    State k2 = f(x + c2 * h, axpy(y, h, {{a21, &k1}}));
    State k3 = f(x + c3 * h, axpy(y, h, {{a31, &k1}, {a32, &k2}}));
    State k4 = f(x + c4 * h, axpy(y, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
    State k5 = f(x + c5 * h, axpy(y, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
    State k6 = f(x + h, axpy(y, h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
    State yn = axpy(y, h, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
    State k7 = f(x + h, yn);
    double err = 0.0;
    for (int i = 0; i < 4; ++i) {
      double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      double sc = opt.tol + opt.tol * std::max(std::abs(y[i]), std::abs(yn[i]));
      double r = std::abs(e) / sc;
      if (!std::isfinite(r) || !std::isfinite(yn[i]) || !std::isfinite(k7[i])) {
        err = std::numeric_limits<double>::infinity();
        break;
      }
      err = std::max(err, r);
    }
    if (!std::isfinite(err)) {
      h_prop = 0.2 * h;
      ++traj.rejected_steps;
      continue;
    }
    if (err <= 1.0) {
      x = clipped ? target : x + h;
      y = yn;
      k1 = k7;
      ++traj.accepted_steps;
      double fac = 0.9 * std::pow(std::max(err, 1e-10), -0.7 / 5.0) * std::pow(err_prev, 0.4 / 5.0);
      err_prev = std::max(err, 1e-4);
      fac = std::clamp(fac, 0.2, 5.0);
      if (clipped) {
        out.push_back({target, {y[0], y[1]}, {y[2], y[3]}});
        ++next;
        if (fac < 1.0) h_prop = h * fac;
      } else {
        h_prop = h * fac;
      }
    } else {
      ++traj.rejected_steps;
      h_prop = h * std::clamp(0.9 * std::pow(err, -1.0 / 5.0), 0.2, 1.0);
    }
  }
}

}  // namespace

Trajectory integrate_oracle(const LinearSystem& system, Complex phi1_0, Complex phi2_0, double x0, const Domain& span,
                            OracleOptions opt) {
  if (opt.tol < 1e-13 || opt.tol > 1e-3) throw ParameterError("oracle tolerance must lie in [1e-13, 1e-3]");
  if (x0 < span.lo || x0 > span.hi) throw ParameterError("oracle anchor outside the span");
  Trajectory traj;
  traj.tol = opt.tol;
  traj.x0 = x0;
  traj.phi1_0 = phi1_0;
  traj.phi2_0 = phi2_0;
  Rhs f{system};
  State y0{phi1_0.real(), phi1_0.imag(), phi2_0.real(), phi2_0.imag()};
  int n = std::max(opt.samples, 2);
  std::vector<double> forward;
  std::vector<double> backward;
  bool x0_on_grid = false;
  for (int i = 0; i < n; ++i) {
    double x = grid_point(span, i, n);
    if (x == x0) x0_on_grid = true;
    else if (x > x0) forward.push_back(x);
    else backward.push_back(x);
  }
  std::reverse(backward.begin(), backward.end());
  std::vector<TrajectoryPoint> pts;
  if (x0_on_grid) pts.push_back({x0, phi1_0, phi2_0});
  integrate_leg(f, x0, y0, forward, pts, traj, opt);
  integrate_leg(f, x0, y0, backward, pts, traj, opt);
  std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return a.x < b.x; });
  traj.points = std::move(pts);
  return traj;
}

double observed_order(double err1, long steps1, double err2, long steps2) {
  return -std::log(err2 / err1) / std::log(static_cast<double>(steps2) / static_cast<double>(steps1));
}

void VerificationReport::finalize() {
  bool ok = true;
  if (residual_checked) ok = ok && max_residual_phi1 <= residual_tol && max_residual_phi2 <= residual_tol;
  if (deviation_checked) ok = ok && max_deviation <= deviation_tol;
  pass = ok && (residual_checked || deviation_checked);
}

std::string VerificationReport::summary() const {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific;
  if (residual_checked) {
    os << "residual phi1 " << max_residual_phi1 << ", phi2 " << max_residual_phi2 << " (tol " << residual_tol << ")";
  }
  if (deviation_checked) {
    if (residual_checked) os << "; ";
    os << "oracle deviation " << max_deviation << " (tol " << deviation_tol << ")";
  }
  os << (pass ? " pass" : " FAIL");
  return os.str();
}

VerificationReport residual_report(const LinearSystem& system, const SolutionEvaluator& sol, int grid, double tol,
                                   double h) {
  if (grid < 9) throw ParameterError("residual grid needs at least 9 points");
  VerificationReport rep;
  rep.grid = grid;
  rep.residual_tol = tol;
  rep.residual_checked = true;
  const Domain& d = sol.domain();
  for (int i = 0; i < grid; ++i) {
    double x = grid_point(d, i, grid);
    try {
      Pair p = sol(x);
      Pair pp = sol(x + h);
      Pair pm = sol(x - h);
      Pair pp2 = sol(x + 2.0 * h);
      Pair pm2 = sol(x - 2.0 * h);
      Complex d1 = (8.0 * (pp[0] - pm[0]) - (pp2[0] - pm2[0])) / (12.0 * h);
      Complex d2 = (8.0 * (pp[1] - pm[1]) - (pp2[1] - pm2[1])) / (12.0 * h);
      Complex r1 = d1 - system.lambda0(x) * p[0] - system.s0(x) * p[1];
      Complex r2 = d2 - system.omega0(x) * p[0] - system.rho0(x) * p[1];
      double scale = 1.0 + std::abs(p[0]) + std::abs(p[1]);
      double e1v = std::abs(r1) / scale;
      double e2v = std::abs(r2) / scale;
      if (!std::isfinite(e1v) || !std::isfinite(e2v)) throw PoleError("non-finite residual", x);
      rep.max_residual_phi1 = std::max(rep.max_residual_phi1, e1v);
      rep.max_residual_phi2 = std::max(rep.max_residual_phi2, e2v);
    } catch (const PoleError&) {
      ++rep.skipped;
      rep.skipped_points.push_back(x);
    }
  }
  rep.finalize();
  return rep;
}

VerificationReport compare_solutions(const SolutionEvaluator& sol, const Trajectory& traj, double tol) {
  Pair at0 = sol(traj.x0);
  double ref = std::max(1.0, std::hypot(std::abs(at0[0]), std::abs(at0[1])));
  double mismatch = std::hypot(std::abs(at0[0] - traj.phi1_0), std::abs(at0[1] - traj.phi2_0));
  if (mismatch > 1e-9 * ref) throw ParameterError("trajectory initial condition does not match the solution anchor");
  VerificationReport rep;
  rep.deviation_tol = tol;
  rep.deviation_checked = true;
  rep.grid = static_cast<int>(traj.points.size());
  for (const auto& pt : traj.points) {
    Pair p = sol(pt.x);
    double num = std::hypot(std::abs(p[0] - pt.phi1), std::abs(p[1] - pt.phi2));
    double den = std::max(1.0, std::hypot(std::abs(pt.phi1), std::abs(pt.phi2)));
    rep.max_deviation = std::max(rep.max_deviation, num / den);
  }
  rep.finalize();
  return rep;
}

VerificationReport full_report(const LinearSystem& system, const SolutionEvaluator& sol, double residual_tol,
                               double compare_tol, double oracle_tol, int grid) {
  VerificationReport res = residual_report(system, sol, grid, residual_tol);
  double x0 = sol.anchor();
  Pair ic = sol(x0);
  OracleOptions opt;
  opt.tol = oracle_tol;
  opt.samples = grid;
  Trajectory traj = integrate_oracle(system, ic[0], ic[1], x0, sol.domain(), opt);
  VerificationReport cmp = compare_solutions(sol, traj, compare_tol);
  res.max_deviation = cmp.max_deviation;
  res.deviation_tol = compare_tol;
  res.deviation_checked = true;
  res.finalize();
  return res;
}

}  // namespace aimlinsys

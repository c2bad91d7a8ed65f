#pragma once

#include <string>
#include <vector>

#include "aimlinsys/closed_form.hpp"
#include "aimlinsys/coefficient.hpp"

namespace aimlinsys {

struct TrajectoryPoint {
  double x;
  Complex phi1;
  Complex phi2;
};

struct Trajectory {
  std::vector<TrajectoryPoint> points;
  long accepted_steps = 0;
  long rejected_steps = 0;
  double tol = 0.0;
  double x0 = 0.0;
  Complex phi1_0{}, phi2_0{};
};

struct OracleOptions {
  double tol = 1e-10;
  /// Output samples across the span, x0 and x1 included.
  int samples = 33;
  long max_steps = 2'000'000;
};

/// Dormand-Prince 5(4) with PI step control on the coupled system, complex
/// state carried as four reals. Integrates from x0 towards both ends of
/// [lo, hi] and returns samples sorted by x.
Trajectory integrate_oracle(const LinearSystem& system, Complex phi1_0, Complex phi2_0, double x0, const Domain& span,
                            OracleOptions opt = {});

/// Observed order from the endpoint errors of two runs: -log(e2/e1)/log(n2/n1)
/// with n the accepted step counts.
double observed_order(double err1, long steps1, double err2, long steps2);

struct VerificationReport {
  double max_residual_phi1 = 0.0;
  double max_residual_phi2 = 0.0;
  double max_deviation = 0.0;
  int grid = 0;
  int skipped = 0;
  std::vector<double> skipped_points;
  double residual_tol = 1e-7;
  double deviation_tol = 1e-6;
  bool residual_checked = false;
  bool deviation_checked = false;
  bool pass = false;

  void finalize();
  std::string summary() const;
};

/// Scaled residuals |φ' - (…)| / (1 + |φ₁| + |φ₂|) at `grid` uniform points,
/// five-point central differences with step h.
VerificationReport residual_report(const LinearSystem& system, const SolutionEvaluator& sol, int grid = 33,
                                   double tol = 1e-7, double h = 1e-5);

/// Largest ‖sol(x) - traj(x)‖ / max(1, ‖traj(x)‖) over the samples.
VerificationReport compare_solutions(const SolutionEvaluator& sol, const Trajectory& traj, double tol = 1e-6);

/// Both checks together, with the oracle started from sol at its anchor.
VerificationReport full_report(const LinearSystem& system, const SolutionEvaluator& sol, double residual_tol = 1e-7,
                               double compare_tol = 1e-6, double oracle_tol = 1e-11, int grid = 33);

}  // namespace aimlinsys

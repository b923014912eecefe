#pragma once

// Runtime certificate for a solver trace. Each check evaluates one inequality
// (or identity) that the method guarantees in exact arithmetic and reports
// its slack; a check passes when slack >= -tolerance.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "padmm/solver.hpp"

namespace padmm {

inline constexpr int kWholeRun = -1;

struct CheckResult {
  std::string name;
  int iteration = kWholeRun;
  double slack = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// Floating-point allowance for exact-arithmetic statements:
/// absolute + relative * scale + 10 * inner_tol * scale.
struct ToleranceModel {
  double absolute = 1e-10;
  double relative = 1e-8;
  double inner_tol = 1e-12;

  double at(double scale) const { return absolute + (relative + 10.0 * inner_tol) * scale; }
  CheckResult make(std::string name, int iteration, double slack, double scale) const;
};

/// Merit bookkeeping for iterate k, computed from records k-1 and k.
struct MeritState {
  double delta_k = 0.0;
  double eta_k = 0.0;
  double merit = 0.0;
  Vector u_k;             // grad g(y_k) - grad g(y_{k-1}) + tau (dy_k - dy_{k-1})
  double theta1 = 0.0;    // |dlambda|^2/(beta theta) + (c1/2)(|B^T dlambda_k|^2 - |B^T dlambda_{k-1}|^2)
  double theta2 = 0.0;    // -kappa (|dy_k|^2 + |dy_{k-1}|^2)
};

MeritState merit_state(const IterateRecord& prev, const IterateRecord& cur,
                        const ProblemInstance& inst, const DerivedConstants& c);

/// Augmented-Lagrangian decrease across the x-step, the y-step, and the multiplier step.
std::vector<CheckResult> check_descent_parts(const IterateRecord& prev, const IterateRecord& cur,
                                             const ProblemInstance& inst,
                                             const DerivedConstants& c, const Matrix& G,
                                             const ToleranceModel& tol);

/// B^T dlambda_k = (1 - theta) w_prev + theta u_k. Returns the check and w_cur = B^T dlambda_k.
std::pair<CheckResult, Vector> check_dual_recursion(const IterateRecord& prev,
                                                    const IterateRecord& cur,
                                                    const ProblemInstance& inst,
                                                    const DerivedConstants& c,
                                                    const Vector& w_prev,
                                                    const ToleranceModel& tol);

/// Theta1 <= gamma/(beta sigma_B+) |u|^2 and |u|^2 <= 3 (L^2 + tau^2)(|dy_k|^2 + |dy_{k-1}|^2),
/// plus the sign facts Theta2 <= 0 and eta_k >= 0.
std::vector<CheckResult> check_theta_bounds(const MeritState& state, const IterateRecord& prev,
                                            const IterateRecord& cur, const DerivedConstants& c,
                                            const ToleranceModel& tol);

/// Primal and dual residual identities and the x-inclusion via a prox fixed point.
std::vector<CheckResult> check_identities(const IterateRecord& prev, const IterateRecord& cur,
                                          const ProblemInstance& inst, const DerivedConstants& c,
                                          const RunSetup& setup, const ToleranceModel& tol);

struct MeritVerdict {
  std::vector<CheckResult> checks;
  bool pass = true;
  double worst_decrease_slack = 0.0;
  double min_merit = 0.0;
};

/// Per-iteration merit decrease bound and merit >= 0 over a whole trace.
MeritVerdict check_merit_monotone(const std::vector<IterateRecord>& trace,
                                  const DerivedConstants& c, const Matrix& G,
                                  const ToleranceModel& tol);

/// Best-iterate selection: smallest j in [1, k] minimizing
/// 0.5 |dx_j|_G^2 + delta1 |dy_j|^2 + delta2 |dlambda_j|^2.
int best_iterate(const std::vector<IterateRecord>& trace, const DerivedConstants& c,
                 const Matrix& G, int k);

struct RateBounds {
  double dx_G = 0.0;
  double dual = 0.0;
  double primal = 0.0;
};
RateBounds theoretical_rate_bounds(const DerivedConstants& c, int k);

/// Cumulative-sum bound plus the three best-iterate bounds at index k.
std::vector<CheckResult> check_rate_bounds(const std::vector<IterateRecord>& trace,
                                           const DerivedConstants& c, const Matrix& G, int k,
                                           const ToleranceModel& tol);

/// Standard-ADMM regime (G = 0, tau = 0, B square invertible, eta0 = 0, penalty condition):
/// returns nullopt when the run is not in that regime.
std::optional<std::vector<CheckResult>> check_corollary_regime(const ProblemInstance& inst,
                                                               const SolverConfig& config,
                                                               const RunSetup& setup);

struct Certificate {
  std::vector<CheckResult> checks;
  int passed = 0;
  int failed = 0;
  // Most negative value of slack + tolerance and the check it came from.
  double worst_margin = 0.0;
  std::string worst_check;
  bool corollary_regime = false;

  bool all_pass() const { return failed == 0; }
};

struct CertifyOptions {
  // Indices for the rate-bound checks; k_final is always added.
  std::vector<int> rate_indices{1, 10, 100};
};

Certificate certify(const ProblemInstance& inst, const SolverConfig& config,
                    const RunResult& result, const CertifyOptions& opts = {});

}  // namespace padmm

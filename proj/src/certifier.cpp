#include "padmm/certifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "padmm/error.hpp"

namespace padmm {

namespace {

// L_beta together with the sum of magnitudes of its terms (the rounding scale).
struct LagrangianValue {
  double value = 0.0;
  double magnitude = 0.0;
};

LagrangianValue lagrangian(const ProblemInstance& inst, double beta, const Vector& x,
                           const Vector& y, const Vector& lambda) {
  const double fx = inst.f->value(x);
  const double gy = inst.g->value(y);
  const Vector r = inst.A * x + inst.B * y - inst.b;
  const double lin = lambda.dot(r);
  const double quad = 0.5 * beta * r.squaredNorm();
  const double mag = std::abs(fx) + std::abs(gy) + std::abs(lin) + quad +
                     lambda.norm() * (inst.A * x).norm() + lambda.norm() * (inst.B * y).norm();
  return {fx + gy - lin + quad, mag};
}

double g_seminorm_sq(const Matrix& G, const Vector& v) { return v.dot(G * v); }

// Rounding scale of quantities derived from the y-subproblem stationarity.
double stationarity_scale(const IterateRecord& prev, const IterateRecord& cur,
                          const ProblemInstance& inst, const DerivedConstants& c) {
  const Matrix Bt = inst.B.transpose();
  return inst.g->gradient(cur.y).norm() + inst.g->gradient(prev.y).norm() +
         (Bt * cur.lambda).norm() + (Bt * prev.lambda).norm() +
         c.beta * c.spectral.norm_BtB * (cur.y.norm() + prev.y.norm()) +
         c.beta * std::sqrt(c.spectral.norm_BtB) * (inst.A * cur.x - inst.b).norm() +
         c.tau * (cur.y.norm() + prev.y.norm()) + cur.inner_grad_norm;
}

}  // namespace

CheckResult ToleranceModel::make(std::string name, int iteration, double slack,
                                 double scale) const {
  CheckResult r;
  r.name = std::move(name);
  r.iteration = iteration;
  r.slack = slack;
  r.tolerance = at(std::isfinite(scale) ? std::abs(scale) : 0.0);
  r.pass = !std::isnan(slack) && slack >= -r.tolerance;
  return r;
}

MeritState merit_state(const IterateRecord& prev, const IterateRecord& cur,
                       const ProblemInstance& inst, const DerivedConstants& c) {
  const Matrix Bt = inst.B.transpose();
  MeritState s;
  s.delta_k = cur.delta_k;
  s.eta_k = 0.5 * c.c1 * (Bt * cur.dlambda).squaredNorm() + c.kappa * cur.dy.squaredNorm();
  s.merit = s.delta_k + s.eta_k;
  s.u_k = inst.g->gradient(cur.y) - inst.g->gradient(prev.y) + c.tau * (cur.dy - prev.dy);
  const double wk = (Bt * cur.dlambda).squaredNorm();
  const double wp = (Bt * prev.dlambda).squaredNorm();
  s.theta1 = cur.dlambda.squaredNorm() / (c.beta * c.theta) + 0.5 * c.c1 * (wk - wp);
  s.theta2 = -c.kappa * (cur.dy.squaredNorm() + prev.dy.squaredNorm());
  return s;
}

std::vector<CheckResult> check_descent_parts(const IterateRecord& prev, const IterateRecord& cur,
                                             const ProblemInstance& inst,
                                             const DerivedConstants& c, const Matrix& G,
                                             const ToleranceModel& tol) {
  const double beta = c.beta;
  const LagrangianValue l0 = lagrangian(inst, beta, prev.x, prev.y, prev.lambda);
  const LagrangianValue l1 = lagrangian(inst, beta, cur.x, prev.y, prev.lambda);
  const LagrangianValue l2 = lagrangian(inst, beta, cur.x, cur.y, prev.lambda);
  const LagrangianValue l3 = lagrangian(inst, beta, cur.x, cur.y, cur.lambda);

  std::vector<CheckResult> out;
  {
    const double rhs = -0.5 * g_seminorm_sq(G, cur.dx);
    const double lhs = l1.value - l0.value;
    out.push_back(tol.make("descent_x_step", cur.k, rhs - lhs, l1.magnitude + l0.magnitude - rhs));
  }
  {
    const double rhs =
        0.5 * (c.m - beta * c.spectral.sigma_B - c.tau) * cur.dy.squaredNorm();
    const double lhs = l2.value - l1.value;
    out.push_back(tol.make("descent_y_step", cur.k, rhs - lhs,
                           l2.magnitude + l1.magnitude + std::abs(rhs)));
  }
  {
    const double rhs = cur.dlambda.squaredNorm() / (c.theta * beta);
    const double lhs = l3.value - l2.value;
    out.push_back(tol.make("descent_multiplier_step", cur.k, -std::abs(lhs - rhs),
                           l3.magnitude + l2.magnitude + rhs));
  }
  return out;
}

std::pair<CheckResult, Vector> check_dual_recursion(const IterateRecord& prev,
                                                    const IterateRecord& cur,
                                                    const ProblemInstance& inst,
                                                    const DerivedConstants& c,
                                                    const Vector& w_prev,
                                                    const ToleranceModel& tol) {
  const Vector w_cur = inst.B.transpose() * cur.dlambda;
  const Vector gk = inst.g->gradient(cur.y);
  const Vector gp = inst.g->gradient(prev.y);
  const Vector u = gk - gp + c.tau * (cur.dy - prev.dy);
  const Vector e = w_cur - (1.0 - c.theta) * w_prev - c.theta * u;
  const double scale = w_cur.norm() + std::abs(1.0 - c.theta) * w_prev.norm() +
                       c.theta * (u.norm() + c.tau * (cur.dy.norm() + prev.dy.norm())) +
                       stationarity_scale(prev, cur, inst, c);
  return {tol.make("dual_recursion", cur.k, -e.norm(), scale), w_cur};
}

std::vector<CheckResult> check_theta_bounds(const MeritState& state, const IterateRecord& prev,
                                            const IterateRecord& cur, const DerivedConstants& c,
                                            const ToleranceModel& tol) {
  std::vector<CheckResult> out;
  const double u2 = state.u_k.squaredNorm();
  const double theta1_bound = c.gamma / (c.beta * c.spectral.sigma_B_plus) * u2;
  const double theta1_scale = cur.dlambda.squaredNorm() / (c.beta * c.theta) +
                              std::abs(state.theta1) + theta1_bound +
                              c.c1 * (state.eta_k + std::abs(prev.eta_k));
  out.push_back(tol.make("theta1_bound", cur.k, theta1_bound - state.theta1, theta1_scale));

  const double dy2 = cur.dy.squaredNorm() + prev.dy.squaredNorm();
  const double u_bound = 3.0 * (c.L * c.L + c.tau * c.tau) * dy2;
  out.push_back(tol.make("u_bound", cur.k, u_bound - u2, u_bound + u2));

  out.push_back(tol.make("theta2_nonpositive", cur.k, -state.theta2, std::abs(state.theta2)));
  out.push_back(tol.make("eta_nonnegative", cur.k, state.eta_k, std::abs(state.eta_k)));
  return out;
}

std::vector<CheckResult> check_identities(const IterateRecord& prev, const IterateRecord& cur,
                                          const ProblemInstance& inst, const DerivedConstants& c,
                                          const RunSetup& setup, const ToleranceModel& tol) {
  std::vector<CheckResult> out;
  const double bt = c.beta * c.theta;
  {
    const double expected = cur.dlambda.norm() / bt;
    out.push_back(tol.make("primal_residual_identity", cur.k, -std::abs(cur.res_primal - expected),
                           cur.res_primal + (cur.lambda.norm() + prev.lambda.norm()) / bt));
  }
  {
    const Matrix Bt = inst.B.transpose();
    const Vector lhs = inst.g->gradient(cur.y) - Bt * cur.lambda_hat;
    const Vector rhs = -(c.beta * (Bt * (inst.B * cur.dy)) + c.tau * cur.dy);
    out.push_back(tol.make("dual_residual_identity", cur.k, -(lhs - rhs).norm(),
                           stationarity_scale(prev, cur, inst, c) +
                               (Bt * cur.lambda_hat).norm()));
  }
  {
    // -G dx + A^T lambda_hat must be a subgradient of f at x: the prox at the
    // implied center reproduces x.
    const double w = setup.prox_weight.value_or(1.0);
    const Vector v = inst.A.transpose() * cur.lambda_hat - setup.G * cur.dx;
    const Vector reprox = inst.f->scaled_prox(cur.x + v / w, w);
    CheckResult r;
    r.name = "x_inclusion";
    r.iteration = cur.k;
    r.slack = -(reprox - cur.x).norm();
    r.tolerance = 1e-9 * std::max(1.0, cur.x.norm());
    r.pass = r.slack >= -r.tolerance;
    out.push_back(r);
  }
  return out;
}

MeritVerdict check_merit_monotone(const std::vector<IterateRecord>& trace,
                                  const DerivedConstants& c, const Matrix& G,
                                  const ToleranceModel& tol) {
  MeritVerdict v;
  if (trace.empty()) return v;
  const double merit0 = trace.front().merit;
  v.worst_decrease_slack = std::numeric_limits<double>::infinity();
  v.min_merit = merit0;
  {
    CheckResult r = tol.make("merit_nonnegative", 0, merit0, 1.0 + std::abs(merit0));
    v.pass = v.pass && r.pass;
    v.checks.push_back(r);
  }
  for (std::size_t k = 1; k < trace.size(); ++k) {
    const IterateRecord& prev = trace[k - 1];
    const IterateRecord& cur = trace[k];
    const double rhs = -0.5 * g_seminorm_sq(G, cur.dx) -
                       c.delta1 * (cur.dy.squaredNorm() + prev.dy.squaredNorm());
    const double lhs = cur.merit - prev.merit;
    const double scale = 1.0 + std::abs(merit0) + std::abs(rhs);
    CheckResult dec = tol.make("merit_decrease", cur.k, rhs - lhs, scale);
    CheckResult nonneg = tol.make("merit_nonnegative", cur.k, cur.merit, 1.0 + std::abs(merit0));
    v.worst_decrease_slack = std::min(v.worst_decrease_slack, dec.slack);
    v.min_merit = std::min(v.min_merit, cur.merit);
    v.pass = v.pass && dec.pass && nonneg.pass;
    v.checks.push_back(std::move(dec));
    v.checks.push_back(std::move(nonneg));
  }
  return v;
}

int best_iterate(const std::vector<IterateRecord>& trace, const DerivedConstants& c,
                 const Matrix& G, int k) {
  if (k < 1 || k >= static_cast<int>(trace.size())) {
    throw ContractError("best_iterate: k out of range");
  }
  int best = 1;
  double best_val = std::numeric_limits<double>::infinity();
  for (int j = 1; j <= k; ++j) {
    const IterateRecord& r = trace[j];
    const double val = 0.5 * g_seminorm_sq(G, r.dx) + c.delta1 * r.dy.squaredNorm() +
                       c.delta2 * r.dlambda.squaredNorm();
    if (val < best_val) {
      best_val = val;
      best = j;
    }
  }
  return best;
}

RateBounds theoretical_rate_bounds(const DerivedConstants& c, int k) {
  const double M = c.rate_constant();
  const double kk = static_cast<double>(k);
  RateBounds b;
  b.dx_G = std::sqrt(6.0 * M / kk);
  b.dual = (c.beta * c.spectral.norm_BtB + c.tau) * std::sqrt(3.0 * M / (c.delta1 * kk));
  b.primal = std::sqrt(3.0 * M / (c.delta2 * kk)) / (c.beta * c.theta);
  return b;
}

std::vector<CheckResult> check_rate_bounds(const std::vector<IterateRecord>& trace,
                                           const DerivedConstants& c, const Matrix& G, int k,
                                           const ToleranceModel& tol) {
  if (k < 1 || k >= static_cast<int>(trace.size())) {
    throw ContractError("check_rate_bounds: k out of range");
  }
  std::vector<CheckResult> out;
  const double M = c.rate_constant();
  double sum = 0.0;
  for (int j = 1; j <= k; ++j) {
    const IterateRecord& r = trace[j];
    sum += 0.5 * g_seminorm_sq(G, r.dx) + c.delta1 * r.dy.squaredNorm() +
           c.delta2 * r.dlambda.squaredNorm();
  }
  out.push_back(tol.make("cumulative_bound", k, 3.0 * M - sum, 3.0 * M + sum));

  const int j = best_iterate(trace, c, G, k);
  const IterateRecord& r = trace[j];
  const RateBounds b = theoretical_rate_bounds(c, k);
  const double dxg = std::sqrt(std::max(0.0, g_seminorm_sq(G, r.dx)));
  out.push_back(tol.make("rate_dx", k, b.dx_G - dxg, b.dx_G + dxg));
  out.push_back(tol.make("rate_dual", k, b.dual - r.res_dual_y, b.dual + r.res_dual_y));
  out.push_back(tol.make("rate_primal", k, b.primal - r.res_primal, b.primal + r.res_primal));
  return out;
}

std::optional<std::vector<CheckResult>> check_corollary_regime(const ProblemInstance& inst,
                                                               const SolverConfig& config,
                                                               const RunSetup& setup) {
  const DerivedConstants& c = setup.constants;
  const bool g_zero = setup.G.isZero(0.0);
  const bool square_invertible = inst.B.rows() == inst.B.cols() && c.spectral.sigma_B > 0.0;
  // eta0 vanishes exactly for a consistent multiplier; a least-squares multiplier
  // leaves a roundoff-level value.
  const bool consistent = c.eta0 <= 1e-12 * (1.0 + std::abs(c.delta0));
  if (!g_zero || c.tau != 0.0 || !square_invertible || !consistent) return std::nullopt;
  const CorollaryCheck cc = corollary_beta_check(c.beta, c.theta, c.spectral.sigma_B, c.m,
                                                 c.gamma, c.L);
  if (!cc.pass) return std::nullopt;

  const ToleranceModel tol{1e-10, 1e-8, config.inner_tol};
  std::vector<CheckResult> out;
  out.push_back(tol.make("corollary_initial_gap_nonnegative", kWholeRun, c.delta0,
                         1.0 + std::abs(c.delta0)));
  out.push_back(tol.make("corollary_delta1_sandwich", kWholeRun,
                         std::min(c.delta1 - cc.delta1_lo, cc.delta1_hi - c.delta1),
                         cc.delta1_hi));
  const double inv_d2 = 1.0 / c.delta2;
  out.push_back(tol.make("corollary_delta2_sandwich", kWholeRun,
                         std::min(inv_d2 - cc.inv_delta2_lo, cc.inv_delta2_hi - inv_d2),
                         cc.inv_delta2_hi));
  return out;
}

Certificate certify(const ProblemInstance& inst, const SolverConfig& config,
                    const RunResult& result, const CertifyOptions& opts) {
  Certificate cert;
  const RunSetup& setup = result.setup;
  const DerivedConstants& c = setup.constants;
  const ToleranceModel tol{1e-10, 1e-8, config.inner_tol};
  const auto& trace = result.trace;

  Vector w_prev = inst.B.transpose() * setup.dlambda0;
  for (std::size_t k = 1; k < trace.size(); ++k) {
    const IterateRecord& prev = trace[k - 1];
    const IterateRecord& cur = trace[k];
    for (auto& r : check_descent_parts(prev, cur, inst, c, setup.G, tol)) {
      cert.checks.push_back(std::move(r));
    }
    auto [rec_check, w_cur] = check_dual_recursion(prev, cur, inst, c, w_prev, tol);
    cert.checks.push_back(std::move(rec_check));
    w_prev = std::move(w_cur);
    const MeritState state = merit_state(prev, cur, inst, c);
    for (auto& r : check_theta_bounds(state, prev, cur, c, tol)) cert.checks.push_back(std::move(r));
    for (auto& r : check_identities(prev, cur, inst, c, setup, tol)) {
      cert.checks.push_back(std::move(r));
    }
  }

  MeritVerdict mv = check_merit_monotone(trace, c, setup.G, tol);
  for (auto& r : mv.checks) cert.checks.push_back(std::move(r));

  const int k_final = static_cast<int>(trace.size()) - 1;
  std::vector<int> ks;
  for (int k : opts.rate_indices) {
    if (k >= 1 && k <= k_final) ks.push_back(k);
  }
  if (k_final >= 1) ks.push_back(k_final);
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  for (int k : ks) {
    for (auto& r : check_rate_bounds(trace, c, setup.G, k, tol)) {
      cert.checks.push_back(std::move(r));
    }
  }

  if (auto cor = check_corollary_regime(inst, config, setup)) {
    cert.corollary_regime = true;
    for (auto& r : *cor) cert.checks.push_back(std::move(r));
  }

  cert.worst_margin = std::numeric_limits<double>::infinity();
  for (const auto& r : cert.checks) {
    if (r.pass) {
      ++cert.passed;
    } else {
      ++cert.failed;
    }
    const double margin = r.slack + r.tolerance;
    if (margin < cert.worst_margin) {
      cert.worst_margin = margin;
      cert.worst_check = r.name + "@" + std::to_string(r.iteration);
    }
  }
  if (cert.checks.empty()) cert.worst_margin = 0.0;
  return cert;
}

}  // namespace padmm

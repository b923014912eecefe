#include "padmm/parameters.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "padmm/error.hpp"

namespace padmm {

namespace {

void require_theta(double theta) {
  if (!(theta > 0.0 && theta < 2.0)) throw DomainError("theta must lie in (0, 2)");
}

}  // namespace

double gamma_of(double theta) {
  require_theta(theta);
  const double d = 1.0 - std::abs(theta - 1.0);
  return theta / (d * d);
}

double c1_of(double theta, double beta, double sigma_B_plus) {
  require_theta(theta);
  if (!(beta > 0.0)) throw DomainError("c1: beta must be positive");
  if (!(sigma_B_plus > 0.0)) throw DomainError("c1: sigma_B_plus must be positive");
  const double a = std::abs(theta - 1.0);
  return 2.0 * a / (beta * theta * (1.0 - a) * sigma_B_plus);
}

double delta1_of(double beta, double tau, double m, double L, double gamma, double sigma_B,
                 double sigma_B_plus) {
  if (!(beta > 0.0) || !(sigma_B_plus > 0.0)) {
    throw DomainError("delta1: beta and sigma_B_plus must be positive");
  }
  return (beta * sigma_B + tau - m) / 4.0 - 3.0 * gamma * (L * L + tau * tau) / (beta * sigma_B_plus);
}

double delta2_of(double beta, double theta, double gamma, double L, double tau,
                 double sigma_B_plus, double delta1) {
  if (!(delta1 > 0.0)) throw ConfigError("delta2: configuration inadmissible (delta1 <= 0)");
  if (!(sigma_B_plus > 0.0)) throw DomainError("delta2: sigma_B_plus must be positive");
  const double inv = beta * theta + 6.0 * theta * gamma * (L * L + tau * tau) / (sigma_B_plus * delta1);
  return 1.0 / inv;
}

double min_admissible_beta(const AdmissibilityInput& in) {
  if (!(in.margin > 1.0)) throw DomainError("min_admissible_beta: margin must exceed 1");
  if (!(in.sigma_B_plus > 0.0)) throw DomainError("min_admissible_beta: sigma_B_plus must be positive");
  const double gamma = gamma_of(in.theta);
  const double k = 12.0 * gamma * (in.L * in.L + in.tau * in.tau);
  double beta_star = 0.0;
  if (in.sigma_B > 0.0) {
    // Positive root of sigma_B sigma_B+ beta^2 + (tau - m) sigma_B+ beta - k = 0.
    const double a = in.sigma_B * in.sigma_B_plus;
    const double bq = (in.tau - in.m) * in.sigma_B_plus;
    const double disc = std::sqrt(bq * bq + 4.0 * a * k);
    // Cancellation-free form of (-bq + disc) / (2a).
    beta_star = bq >= 0.0 ? (2.0 * k) / (bq + disc) : (-bq + disc) / (2.0 * a);
  } else {
    if (!(in.tau > in.m)) {
      throw ConfigError("no admissible beta: sigma_B = 0 requires tau > m (got tau=" +
                        std::to_string(in.tau) + ", m=" + std::to_string(in.m) + ")");
    }
    beta_star = k / ((in.tau - in.m) * in.sigma_B_plus);
  }
  double beta = in.margin * std::max(in.beta_bar, beta_star);
  if (!(beta > 0.0)) {
    throw ConfigError("min_admissible_beta: degenerate data (L = tau = 0 and beta_bar = 0)");
  }
  return beta;
}

CorollaryCheck corollary_beta_check(double beta, double theta, double sigma_B, double m,
                                    double gamma, double L) {
  if (!(sigma_B > 0.0)) throw DomainError("corollary check requires invertible B (sigma_B > 0)");
  if (!(beta > 0.0)) throw DomainError("corollary check: beta must be positive");
  CorollaryCheck out;
  const double bs = beta * sigma_B;
  out.slack = (bs - 2.0 * m) / 8.0 - 3.0 * gamma * L * L / bs;
  out.pass = out.slack >= 0.0;
  out.delta1_lo = bs / 8.0;
  out.delta1_hi = bs / 4.0;
  out.inv_delta2_lo = beta * theta;
  out.inv_delta2_hi = 3.0 * beta * theta;
  return out;
}

double corollary_min_beta(double theta, double sigma_B, double m, double L) {
  if (!(sigma_B > 0.0)) throw DomainError("corollary_min_beta requires sigma_B > 0");
  const double gamma = gamma_of(theta);
  // sigma^2 beta^2 - 2 m sigma beta - 24 gamma L^2 >= 0.
  return (m + std::sqrt(m * m + 24.0 * gamma * L * L)) / sigma_B;
}

bool eta0_feasible(const Eta0Input& in, const RangeProjector& range_bt) {
  require_theta(in.theta);
  if (in.rhs.size() != range_bt.ambient_dim()) throw ContractError("eta0: rhs has wrong size");
  if (in.tau > 0.0) return true;
  // tau == 0: the constraint pins s w = v with w in Im(B^T).
  const Vector& v = in.rhs;
  const double tol = kEta0FeasibilityTolerance * std::max({1.0, v.norm(), in.rhs_scale});
  if (v.norm() <= tol) return true;
  if (in.theta == 1.0) return false;
  return (v - range_bt.apply(v)).norm() <= tol;
}

Eta0Solution solve_eta0(const Eta0Input& in, const RangeProjector& range_bt) {
  require_theta(in.theta);
  if (in.rhs.size() != range_bt.ambient_dim()) throw ContractError("eta0: rhs has wrong size");
  if (!(in.tau >= 0.0)) throw DomainError("eta0: tau must be >= 0");

  const Eigen::Index p = in.rhs.size();
  const Vector& v = in.rhs;
  Eta0Solution out;
  out.dy0 = Vector::Zero(p);
  out.w0 = Vector::Zero(p);
  if (!eta0_feasible(in, range_bt)) {
    out.feasible = false;
    out.value = std::numeric_limits<double>::infinity();
    return out;
  }

  const double kappa = (in.beta * in.sigma_B + in.tau - in.m) / 4.0;
  if (!(kappa > 0.0)) throw ConfigError("eta0: (beta sigma_B + tau - m) must be positive");
  const double c1 = c1_of(in.theta, in.beta, in.sigma_B_plus);
  const double s = 1.0 - 1.0 / in.theta;

  if (v.isZero(0.0)) return out;

  if (in.tau > 0.0) {
    // dy = (v - s w)/tau; the objective in the basis coordinates z of w = U z is
    // (c1/2)|z|^2 + (kappa/tau^2)|v - s U z|^2, minimized in closed form.
    const double t2 = in.tau * in.tau;
    const double denom = c1 + 2.0 * kappa * s * s / t2;
    if (denom > 0.0) {
      const Vector z = (2.0 * kappa * s / t2 / denom) * range_bt.coordinates(v);
      out.w0 = range_bt.basis() * z;
    }
    out.dy0 = (v - s * out.w0) / in.tau;
    out.value = 0.5 * c1 * out.w0.squaredNorm() + kappa * out.dy0.squaredNorm();
    return out;
  }

  // tau == 0 and feasible: w = v / s (or v ~ 0 at theta = 1).
  if (s == 0.0) return out;
  out.w0 = range_bt.apply(v) / s;
  out.value = 0.5 * c1 * out.w0.squaredNorm();
  return out;
}

Eta0Solution solve_eta0(const Eta0Input& in, const Matrix& b_mat) {
  return solve_eta0(in, RangeProjector(b_mat.transpose()));
}

}  // namespace padmm

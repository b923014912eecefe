#pragma once

// Step-size constants, penalty admissibility, and the seeding program for eta_0.

#include <optional>

#include "padmm/linalg.hpp"

namespace padmm {

/// gamma = theta / (1 - |theta - 1|)^2, theta in (0, 2).
double gamma_of(double theta);

/// c1 = 2|theta-1| / (beta theta (1-|theta-1|) sigma_B_plus); zero iff theta == 1.
double c1_of(double theta, double beta, double sigma_B_plus);

/// Admissibility margin. The configuration is admissible iff the result is > 0.
double delta1_of(double beta, double tau, double m, double L, double gamma, double sigma_B,
                 double sigma_B_plus);

/// delta2 = (beta theta + 6 theta gamma (L^2 + tau^2) / (sigma_B_plus delta1))^{-1}.
/// Throws ConfigError when delta1 <= 0.
double delta2_of(double beta, double theta, double gamma, double L, double tau,
                 double sigma_B_plus, double delta1);

struct AdmissibilityInput {
  double theta = 1.0;
  double tau = 0.0;
  double m = 0.0;
  double L = 1.0;
  double sigma_B = 0.0;
  double sigma_B_plus = 0.0;
  double beta_bar = 0.0;
  double margin = 1.1;
};

/// Smallest beta making delta1 >= 0 (times `margin` > 1, and at least beta_bar).
/// Throws ConfigError when sigma_B == 0 and tau <= m: no beta is admissible.
double min_admissible_beta(const AdmissibilityInput& in);

/// Standard-ADMM penalty condition (G = 0, tau = 0, B invertible).
struct CorollaryCheck {
  double slack = 0.0;  // (beta sigma_B - 2m)/8 - 3 gamma L^2 / (beta sigma_B)
  bool pass = false;
  // Implied bounds, valid when pass: delta1 in [lo, hi], 1/delta2 in [lo, hi].
  double delta1_lo = 0.0, delta1_hi = 0.0;
  double inv_delta2_lo = 0.0, inv_delta2_hi = 0.0;
};

/// Throws DomainError when sigma_B == 0.
CorollaryCheck corollary_beta_check(double beta, double theta, double sigma_B, double m,
                                    double gamma, double L);

/// Smallest beta satisfying the standard-ADMM penalty condition:
/// (m + sqrt(m^2 + 24 gamma L^2)) / sigma_B.
double corollary_min_beta(double theta, double sigma_B, double m, double L);

/// Data for the eta_0 program.
struct Eta0Input {
  double theta = 1.0;
  double tau = 0.0;
  double beta = 1.0;
  double m = 0.0;
  double sigma_B = 0.0;
  double sigma_B_plus = 0.0;
  Vector rhs;  // v = B^T lambda0 - grad g(y0)
  // Magnitude of the terms that were subtracted to form rhs; sets the
  // feasibility tolerance when tau == 0.
  double rhs_scale = 0.0;
};

/// Optimal value and optimizer of
///   min  (c1/2)||w||^2 + kappa ||dy||^2
///   s.t. tau dy + (1 - 1/theta) w = v,   w in Im(B^T)
/// where w stands for B^T dlambda0. value is +infinity when infeasible.
struct Eta0Solution {
  double value = 0.0;
  bool feasible = true;
  Vector dy0;  // optimal dy (zero when infeasible)
  Vector w0;   // optimal B^T dlambda0
};

Eta0Solution solve_eta0(const Eta0Input& in, const RangeProjector& range_bt);

/// Feasibility of the eta_0 constraint alone. It does not depend on beta, so run
/// setup can reject an infinite eta_0 before choosing beta.
bool eta0_feasible(const Eta0Input& in, const RangeProjector& range_bt);

/// Convenience overload building the projector onto Im(B^T).
Eta0Solution solve_eta0(const Eta0Input& in, const Matrix& b_mat);

/// Relative tolerance deciding whether v lies in Im(B^T) when tau == 0.
inline constexpr double kEta0FeasibilityTolerance = 1e-9;

}  // namespace padmm

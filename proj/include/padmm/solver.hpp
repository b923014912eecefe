#pragma once

// Proximal ADMM with over-relaxation:
//
//   x_k = argmin_x  L_beta(x, y_{k-1}, lambda_{k-1}) + 0.5 ||x - x_{k-1}||_G^2
//   y_k = argmin_y  L_beta(x_k, y, lambda_{k-1})     + (tau/2) ||y - y_{k-1}||^2
//   lambda_k = lambda_{k-1} - theta beta (A x_k + B y_k - b),   theta in (0, 2).

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "padmm/linalg.hpp"
#include "padmm/parameters.hpp"
#include "padmm/problem.hpp"

namespace padmm {

/// Proximal metric G for the x-subproblem.
struct GSpec {
  enum class Kind { Zero, Explicit, Linearized };
  Kind kind = Kind::Zero;
  Matrix matrix;                 // Explicit only
  std::optional<double> alpha;   // Linearized only; nullopt = beta * lambda_max(A^T A)

  static GSpec zero() { return {}; }
  static GSpec explicit_matrix(Matrix g) { return {Kind::Explicit, std::move(g), std::nullopt}; }
  static GSpec linearized(std::optional<double> alpha = std::nullopt) {
    return {Kind::Linearized, Matrix(), alpha};
  }
};

struct SolverConfig {
  double theta = 1.0;
  std::optional<double> beta;  // nullopt: smallest admissible beta times beta_margin
  double beta_margin = 1.1;
  double tau = 0.0;
  GSpec G;
  double rho = 1e-6;
  int max_iters = 1000;
  bool certify = true;
  double inner_tol = 1e-12;
  int inner_max_iters = 100;
};

struct StartPoint {
  Vector x0;
  Vector y0;
  Vector lambda0;
};

/// Every constant fixed at setup time.
struct DerivedConstants {
  double theta = 0.0;
  double beta = 0.0;
  double tau = 0.0;
  double gamma = 0.0;
  double c1 = 0.0;
  double delta1 = 0.0;
  double delta2 = 0.0;
  double eta0 = 0.0;
  double kappa = 0.0;  // (beta sigma_B + tau - m) / 4
  double L = 0.0;
  double m = 0.0;
  double delta0 = 0.0;  // L_beta(x0, y0, lambda0) - L_bar_lower
  SpectralSummary spectral;

  double rate_constant() const { return std::max(eta0, delta0); }
};

/// Resolved setup of one run: constants, the concrete G, and the eta_0 seed.
struct RunSetup {
  DerivedConstants constants;
  Matrix G;
  // Scalar metric weight of G + beta A^T A when it is a multiple of I.
  std::optional<double> prox_weight;
  Vector dy0;       // optimal seed of the eta_0 program
  Vector dlambda0;  // a multiplier difference realizing B^T dlambda0 = w0
  Vector w0;
};

/// Validates the configuration against the instance and computes all constants.
/// Throws ConfigError for inadmissible beta, non-PSD G, infinite eta_0, x0 outside dom f.
RunSetup prepare_run(const ProblemInstance& inst, const SolverConfig& config,
                     const StartPoint& start);

struct IterateRecord {
  int k = 0;
  Vector x, y, lambda, lambda_hat;
  Vector dx, dy, dlambda;  // at k = 0: zero, and the eta_0 seed for dy, dlambda
  double L_beta = 0.0;
  double delta_k = 0.0;
  double eta_k = 0.0;
  double merit = 0.0;
  double res_primal = 0.0;  // ||A x + B y - b||
  double res_dual_y = 0.0;  // ||grad g(y) - B^T lambda_hat||
  double res_dual_x = 0.0;  // ||G dx||
  int inner_iters = 0;
  double inner_grad_norm = 0.0;
};

/// x-subproblem solver bound to (instance, beta, G).
class XStep {
 public:
  XStep(const ProblemInstance& inst, double beta, const Matrix& G, bool linearized);
  Vector operator()(const Vector& x_prev, const Vector& y_prev, const Vector& lambda_prev) const;
  std::optional<double> prox_weight() const { return weight_; }

 private:
  const ProblemInstance& inst_;
  double beta_;
  Matrix G_;
  bool linearized_;
  std::optional<double> weight_;
  MetricProx prox_;
};

struct YStepResult {
  Vector y;
  int iterations = 0;
  double grad_norm = 0.0;
};

/// y-subproblem solver: one SPD solve for quadratic g, damped Newton otherwise.
class YStep {
 public:
  YStep(const ProblemInstance& inst, double beta, double tau, double inner_tol, int max_iters);
  YStepResult operator()(const Vector& x_next, const Vector& y_prev,
                         const Vector& lambda_prev) const;
  // Gradient of the y-subproblem objective.
  Vector objective_gradient(const Vector& y, const Vector& x_next, const Vector& y_prev,
                            const Vector& lambda_prev) const;

 private:
  double objective(const Vector& y, const Vector& x_next, const Vector& y_prev,
                   const Vector& lambda_prev) const;

  const ProblemInstance& inst_;
  double beta_;
  double tau_;
  double inner_tol_;
  int max_iters_;
  Matrix BtB_;
  std::optional<Eigen::LLT<Matrix>> quadratic_factor_;
};

// Single-step forms of the updates.
Vector x_step(const ProblemInstance& inst, const SolverConfig& config, double beta,
              const Vector& x_prev, const Vector& y_prev, const Vector& lambda_prev);
Vector y_step(const ProblemInstance& inst, const SolverConfig& config, double beta,
              const Vector& x_next, const Vector& y_prev, const Vector& lambda_prev);
Vector lambda_step(const Vector& lambda_prev, double theta, double beta,
                   const Vector& primal_residual);
Vector lambda_hat(const Vector& lambda_prev, double beta, const Vector& x_next,
                  const Vector& y_prev, const ProblemInstance& inst);

/// Resolves G for a given beta (linearized alpha may depend on beta).
Matrix resolve_G(const ProblemInstance& inst, const GSpec& spec, double beta);

enum class Outcome { Converged, IterationCap, Error };
std::string to_string(Outcome o);

struct RunResult {
  RunSetup setup;
  std::vector<IterateRecord> trace;  // trace[k] is iterate k; trace[0] is the start
  Outcome outcome = Outcome::Error;
  int iterations = 0;
  std::string message;
};

using IterateCallback = std::function<void(const IterateRecord&)>;

/// Runs to max(res_primal, res_dual_y, res_dual_x) <= rho or max_iters.
/// Setup problems throw; failures after the first iterate end with Outcome::Error.
RunResult run(const ProblemInstance& inst, const SolverConfig& config, const StartPoint& start,
              const IterateCallback& on_iterate = {});

/// Least-squares multiplier with B^T lambda = grad g(y0). Returns the residual norm.
std::pair<Vector, double> consistent_multiplier(const ProblemInstance& inst, const Vector& y0);

inline constexpr double kDivergenceFactor = 1e12;

}  // namespace padmm

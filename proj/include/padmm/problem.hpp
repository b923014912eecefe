#pragma once

// Problem model:  minimize f(x) + g(y)  subject to  A x + B y = b.
//
// f is a proper lsc function reached only through its proximal map; g is a
// differentiable function with declared constants L (Lipschitz bound on the
// projected gradient) and m (weak convexity modulus).

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "padmm/linalg.hpp"

namespace padmm {

// ---------------------------------------------------------------------------
// Smooth oracle (g)
// ---------------------------------------------------------------------------

class SmoothOracle {
 public:
  SmoothOracle(double lipschitz, double weak_convexity)
      : lipschitz_(lipschitz), weak_convexity_(weak_convexity) {}
  virtual ~SmoothOracle() = default;

  virtual std::string family() const = 0;
  virtual double value(const Vector& y) const = 0;
  virtual Vector gradient(const Vector& y) const = 0;
  virtual Matrix hessian(const Vector& y) const = 0;
  // Quadratic oracles have a constant Hessian; the y-step then needs one solve.
  virtual bool is_quadratic() const { return false; }

  double lipschitz() const { return lipschitz_; }
  double weak_convexity() const { return weak_convexity_; }

 private:
  double lipschitz_;
  double weak_convexity_;
};

/// g(y) = 0.5 y^T Q y + c^T y.
class QuadraticSmooth final : public SmoothOracle {
 public:
  // Constants default to the exact ones: L = max |eig(Q)|, m = max(0, -eig_min(Q)).
  QuadraticSmooth(Matrix q, Vector c, std::optional<double> lipschitz = std::nullopt,
                  std::optional<double> weak_convexity = std::nullopt);

  std::string family() const override { return "quadratic"; }
  double value(const Vector& y) const override;
  Vector gradient(const Vector& y) const override;
  Matrix hessian(const Vector& y) const override;
  bool is_quadratic() const override { return true; }

  const Matrix& Q() const { return q_; }
  const Vector& c() const { return c_; }

 private:
  QuadraticSmooth(Matrix q, Vector c, EigenRange range, std::optional<double> lipschitz,
                  std::optional<double> weak_convexity);
  Matrix q_;
  Vector c_;
};

/// g(y) = 0.5 ||y||^2 + a * sum_i cos(y_i); nonconvex for a > 1.
class CosineSmooth final : public SmoothOracle {
 public:
  CosineSmooth(Eigen::Index dim, double amplitude,
               std::optional<double> lipschitz = std::nullopt,
               std::optional<double> weak_convexity = std::nullopt);

  std::string family() const override { return "cosine"; }
  double value(const Vector& y) const override;
  Vector gradient(const Vector& y) const override;
  Matrix hessian(const Vector& y) const override;

  Eigen::Index dim() const { return dim_; }
  double amplitude() const { return amplitude_; }

 private:
  Eigen::Index dim_;
  double amplitude_;
};

// ---------------------------------------------------------------------------
// Nonsmooth oracle (f)
// ---------------------------------------------------------------------------

// Solves  min_x f(x) + 0.5 x^T M x + <linear, x>  for a metric M fixed at bind time.
using MetricProx = std::function<Vector(const Vector& linear)>;

class NonsmoothOracle {
 public:
  virtual ~NonsmoothOracle() = default;

  virtual std::string family() const = 0;
  // +infinity outside dom f.
  virtual double value(const Vector& x) const = 0;
  // A global minimizer of f(x) + (weight/2) ||x - center||^2, weight > 0.
  virtual Vector scaled_prox(const Vector& center, double weight) const = 0;
  // Default binding only supports metrics that are a positive multiple of the
  // identity (routed through scaled_prox); throws ConfigError otherwise.
  virtual MetricProx bind_metric(const Matrix& metric) const;
};

/// f(x) = 0.5 x^T P x + q^T x with P symmetric PSD.
class QuadraticFunction final : public NonsmoothOracle {
 public:
  QuadraticFunction(Matrix p, Vector q);

  std::string family() const override { return "quadratic"; }
  double value(const Vector& x) const override;
  Vector scaled_prox(const Vector& center, double weight) const override;
  MetricProx bind_metric(const Matrix& metric) const override;

  const Matrix& P() const { return p_; }
  const Vector& q() const { return q_; }

 private:
  Matrix p_;
  Vector q_;
};

/// Indicator of the box {lower <= x <= upper}.
class BoxIndicator final : public NonsmoothOracle {
 public:
  BoxIndicator(Vector lower, Vector upper);

  std::string family() const override { return "box"; }
  double value(const Vector& x) const override;
  Vector scaled_prox(const Vector& center, double weight) const override;

  const Vector& lower() const { return lower_; }
  const Vector& upper() const { return upper_; }

 private:
  Vector lower_;
  Vector upper_;
};

/// f(x) = mu * ||x||_0. Prox is hard thresholding; at the exact threshold the
/// coordinate is set to zero.
class L0Penalty final : public NonsmoothOracle {
 public:
  explicit L0Penalty(double mu);

  std::string family() const override { return "l0"; }
  double value(const Vector& x) const override;
  Vector scaled_prox(const Vector& center, double weight) const override;

  double mu() const { return mu_; }

 private:
  double mu_;
};

/// Indicator of the unit sphere {||x|| = 1}. The prox of the origin is e_1.
class SphereIndicator final : public NonsmoothOracle {
 public:
  std::string family() const override { return "sphere"; }
  double value(const Vector& x) const override;
  Vector scaled_prox(const Vector& center, double weight) const override;
};

/// Returns alpha when metric == alpha * I (relative tolerance 1e-10) with alpha > 0.
std::optional<double> scalar_metric_weight(const Matrix& metric);

// ---------------------------------------------------------------------------
// Instance
// ---------------------------------------------------------------------------

struct ProblemInstance {
  Matrix A;  // l x n
  Matrix B;  // l x p
  Vector b;  // l
  std::shared_ptr<const NonsmoothOracle> f;
  std::shared_ptr<const SmoothOracle> g;
  double beta_bar = 0.0;
  double L_bar_lower = 0.0;  // lower bound on inf f + g + (beta_bar/2)||Ax+By-b||^2

  Eigen::Index n() const { return A.cols(); }
  Eigen::Index p() const { return B.cols(); }
  Eigen::Index l() const { return A.rows(); }

  /// Throws ContractError on inconsistent shapes, missing oracles or non-finite data.
  void check_consistency() const;
};

/// Augmented Lagrangian; +infinity when x is outside dom f.
double aug_lagrangian(const ProblemInstance& inst, double beta, const Vector& x, const Vector& y,
                      const Vector& lambda);

/// Initial gap L_beta(x0, y0, lambda0) - L_bar_lower. Requires beta >= beta_bar.
double delta0(const ProblemInstance& inst, double beta, const Vector& x0, const Vector& y0,
              const Vector& lambda0);

struct ValidationOptions {
  int samples = 200;
  double tol = 1e-6;
  std::uint64_t seed = 0x5eed;
};

struct ValidationReport {
  bool a0_pass = false;  // f proper: finite somewhere
  bool b_nonzero = false;
  double a1_gap = 0.0;
  bool a1_pass = false;
  double a2_worst_violation = 0.0;  // > 0 means the declared L is too small
  bool a2_pass = false;
  double a3_worst_violation = 0.0;  // > 0 means the declared m is too small
  bool a3_pass = false;
  double gradient_worst_error = 0.0;  // vs central finite differences
  bool gradient_pass = false;
  bool a4_pass = false;
  double lipschitz = 0.0;
  double weak_convexity = 0.0;

  bool all_pass() const {
    return a0_pass && b_nonzero && a1_pass && a2_pass && a3_pass && gradient_pass && a4_pass;
  }
  std::string summary() const;
};

inline constexpr double kRangeInclusionTolerance = 1e-8;

ValidationReport validate_assumptions(const ProblemInstance& inst,
                                      const ValidationOptions& opts = {});

}  // namespace padmm

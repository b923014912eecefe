#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include "padmm/error.hpp"
#include "padmm/problem.hpp"

namespace padmm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// A2 asks for L > 0; a zero Hessian still gets a (tiny) positive constant.
constexpr double kMinLipschitz = 1e-8;

void require_square(const Matrix& m, const char* what) {
  if (m.rows() != m.cols()) throw ContractError(std::string(what) + " must be square");
}

}  // namespace

// --- QuadraticSmooth -------------------------------------------------------

QuadraticSmooth::QuadraticSmooth(Matrix q, Vector c, std::optional<double> lipschitz,
                                 std::optional<double> weak_convexity)
    : QuadraticSmooth(q, std::move(c), symmetric_eigen_range(0.5 * (q + q.transpose())),
                      lipschitz, weak_convexity) {}

QuadraticSmooth::QuadraticSmooth(Matrix q, Vector c, EigenRange range,
                                 std::optional<double> lipschitz,
                                 std::optional<double> weak_convexity)
    : SmoothOracle(lipschitz.value_or(std::max({std::abs(range.min), std::abs(range.max),
                                                 kMinLipschitz})),
                   weak_convexity.value_or(std::max(0.0, -range.min))),
      q_(std::move(q)),
      c_(std::move(c)) {
  require_square(q_, "Q");
  if (c_.size() != q_.rows()) throw ContractError("quadratic g: c and Q sizes differ");
  if (!(q_ - q_.transpose()).isZero(1e-12 * std::max(1.0, q_.norm()))) {
    throw ContractError("quadratic g: Q must be symmetric");
  }
}

double QuadraticSmooth::value(const Vector& y) const { return 0.5 * y.dot(q_ * y) + c_.dot(y); }
Vector QuadraticSmooth::gradient(const Vector& y) const { return q_ * y + c_; }
Matrix QuadraticSmooth::hessian(const Vector&) const { return q_; }

// --- CosineSmooth ----------------------------------------------------------

CosineSmooth::CosineSmooth(Eigen::Index dim, double amplitude, std::optional<double> lipschitz,
                           std::optional<double> weak_convexity)
    : SmoothOracle(lipschitz.value_or(1.0 + amplitude),
                   weak_convexity.value_or(std::max(0.0, amplitude - 1.0))),
      dim_(dim),
      amplitude_(amplitude) {
  if (dim <= 0) throw ContractError("cosine g: dimension must be positive");
  if (!(amplitude >= 0.0) || !std::isfinite(amplitude)) {
    throw ContractError("cosine g: amplitude must be finite and >= 0");
  }
}

double CosineSmooth::value(const Vector& y) const {
  return 0.5 * y.squaredNorm() + amplitude_ * y.array().cos().sum();
}

Vector CosineSmooth::gradient(const Vector& y) const {
  return y - amplitude_ * y.array().sin().matrix();
}

Matrix CosineSmooth::hessian(const Vector& y) const {
  Vector d = Vector::Ones(y.size()) - amplitude_ * y.array().cos().matrix();
  return d.asDiagonal();
}

// --- metric handling -------------------------------------------------------

std::optional<double> scalar_metric_weight(const Matrix& metric) {
  if (metric.rows() != metric.cols() || metric.rows() == 0) return std::nullopt;
  const double alpha = metric.trace() / static_cast<double>(metric.rows());
  if (!(alpha > 0.0)) return std::nullopt;
  const Matrix diff = metric - alpha * Matrix::Identity(metric.rows(), metric.cols());
  if (diff.norm() > 1e-10 * alpha * std::sqrt(static_cast<double>(metric.rows()))) {
    return std::nullopt;
  }
  return alpha;
}

MetricProx NonsmoothOracle::bind_metric(const Matrix& metric) const {
  const auto alpha = scalar_metric_weight(metric);
  if (!alpha) {
    throw ConfigError("f family '" + family() +
                      "' has no metric prox for a non-scalar metric G + beta A^T A; "
                      "use a linearized G");
  }
  const double w = *alpha;
  return [this, w](const Vector& linear) -> Vector { return scaled_prox(-linear / w, w); };
}

// --- QuadraticFunction -----------------------------------------------------

QuadraticFunction::QuadraticFunction(Matrix p, Vector q) : p_(std::move(p)), q_(std::move(q)) {
  require_square(p_, "P");
  if (q_.size() != p_.rows()) throw ContractError("quadratic f: q and P sizes differ");
  if (!(p_ - p_.transpose()).isZero(1e-12 * std::max(1.0, p_.norm()))) {
    throw ContractError("quadratic f: P must be symmetric");
  }
  if (p_.size() > 0 && symmetric_eigen_range(p_).min < -1e-10 * std::max(1.0, p_.norm())) {
    throw ContractError("quadratic f: P must be positive semidefinite");
  }
}

double QuadraticFunction::value(const Vector& x) const {
  return 0.5 * x.dot(p_ * x) + q_.dot(x);
}

Vector QuadraticFunction::scaled_prox(const Vector& center, double weight) const {
  if (!(weight > 0.0)) throw DomainError("scaled_prox: weight must be positive");
  const Matrix h = p_ + weight * Matrix::Identity(p_.rows(), p_.cols());
  return h.llt().solve(weight * center - q_);
}

MetricProx QuadraticFunction::bind_metric(const Matrix& metric) const {
  if (metric.rows() != p_.rows() || metric.cols() != p_.cols()) {
    throw ContractError("quadratic f: metric has wrong size");
  }
  Matrix h = p_ + metric;
  h = 0.5 * (h + h.transpose());
  auto llt = std::make_shared<Eigen::LLT<Matrix>>(h);
  if (llt->info() == Eigen::Success) {
    return [llt, this](const Vector& linear) -> Vector { return llt->solve(-q_ - linear); };
  }
  // Singular but PSD: minimum-norm minimizer, provided the objective is bounded.
  auto cod = std::make_shared<Eigen::CompleteOrthogonalDecomposition<Matrix>>(h);
  auto hh = std::make_shared<Matrix>(h);
  return [cod, hh, this](const Vector& linear) -> Vector {
    const Vector rhs = -q_ - linear;
    Vector x = cod->solve(rhs);
    if ((*hh * x - rhs).norm() > 1e-9 * std::max(1.0, rhs.norm())) {
      throw ConfigError("x-subproblem is unbounded below (P + G + beta A^T A is singular)");
    }
    return x;
  };
}

// --- BoxIndicator ----------------------------------------------------------

BoxIndicator::BoxIndicator(Vector lower, Vector upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.size() != upper_.size()) throw ContractError("box: bound sizes differ");
  if ((lower_.array() > upper_.array()).any()) throw ContractError("box: lower > upper");
}

double BoxIndicator::value(const Vector& x) const {
  if (x.size() != lower_.size()) throw ContractError("box: dimension mismatch");
  return ((x.array() >= lower_.array()) && (x.array() <= upper_.array())).all() ? 0.0 : kInf;
}

Vector BoxIndicator::scaled_prox(const Vector& center, double weight) const {
  if (!(weight > 0.0)) throw DomainError("scaled_prox: weight must be positive");
  if (center.size() != lower_.size()) throw ContractError("box: dimension mismatch");
  return center.cwiseMax(lower_).cwiseMin(upper_);
}

// --- L0Penalty -------------------------------------------------------------

L0Penalty::L0Penalty(double mu) : mu_(mu) {
  if (!(mu >= 0.0) || !std::isfinite(mu)) throw ContractError("l0: mu must be finite and >= 0");
}

double L0Penalty::value(const Vector& x) const {
  return mu_ * static_cast<double>((x.array() != 0.0).count());
}

Vector L0Penalty::scaled_prox(const Vector& center, double weight) const {
  if (!(weight > 0.0)) throw DomainError("scaled_prox: weight must be positive");
  // Keeping z_i costs mu, zeroing it costs (weight/2) z_i^2.
  const double threshold = 2.0 * mu_ / weight;
  Vector out = center;
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    if (out(i) * out(i) <= threshold) out(i) = 0.0;
  }
  return out;
}

// --- SphereIndicator -------------------------------------------------------

double SphereIndicator::value(const Vector& x) const {
  return std::abs(x.norm() - 1.0) <= 1e-12 ? 0.0 : kInf;
}

Vector SphereIndicator::scaled_prox(const Vector& center, double weight) const {
  if (!(weight > 0.0)) throw DomainError("scaled_prox: weight must be positive");
  if (center.size() == 0) throw ContractError("sphere: empty vector");
  const double nrm = center.norm();
  if (nrm == 0.0) {
    Vector e = Vector::Zero(center.size());
    e(0) = 1.0;
    return e;
  }
  return center / nrm;
}

}  // namespace padmm

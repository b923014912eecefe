#pragma once

// Test-only reference computations. They deliberately avoid the library's
// code paths: eigenvalues by cyclic Jacobi rotations, pseudo-inverses by a
// one-sided Jacobi SVD, and the eta_0 program by generic KKT / projected gradient.

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Eigenvalues of a symmetric matrix, ascending.
inline std::vector<double> jacobi_eigenvalues(Matrix a) {
  const Eigen::Index n = a.rows();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = i + 1; j < n; ++j) off += a(i, j) * a(i, j);
    }
    if (off < 1e-30 * std::max(1.0, a.squaredNorm())) break;
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        if (a(p, q) == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> ev(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) ev[static_cast<std::size_t>(i)] = a(i, i);
  std::sort(ev.begin(), ev.end());
  return ev;
}

// Moore-Penrose pseudo-inverse with relative cutoff.
inline Matrix pinv(const Matrix& m, double rel = 1e-12) {
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Vector& s = svd.singularValues();
  const double cut = rel * (s.size() ? s(0) : 0.0);
  Matrix sinv = Matrix::Zero(m.cols(), m.rows());
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > cut) sinv(i, i) = 1.0 / s(i);
  }
  return svd.matrixV() * sinv * svd.matrixU().transpose();
}

// Smallest positive / largest eigenvalue of B^T B by Jacobi.
struct Spectrum {
  double min = 0.0;
  double min_positive = 0.0;
  double max = 0.0;
};
inline Spectrum spectrum_BtB(const Matrix& b) {
  const auto ev = jacobi_eigenvalues(b.transpose() * b);
  Spectrum s;
  s.min = std::max(0.0, ev.front());
  s.max = ev.back();
  const double cut = 1e-10 * std::max(1.0, s.max);
  s.min_positive = std::numeric_limits<double>::infinity();
  for (double v : ev) {
    if (v > cut) s.min_positive = std::min(s.min_positive, v);
  }
  if (s.min <= cut) s.min = 0.0;
  return s;
}

// The eta_0 program written in (dy, mu) with w = B^T mu:
//   min  kappa |dy|^2 + (c1/2) |B^T mu|^2   s.t.  tau dy + s B^T mu = v.
struct Eta0Problem {
  Matrix B;
  Vector v;
  double tau = 0.0;
  double s = 0.0;   // 1 - 1/theta
  double c1 = 0.0;
  double kappa = 1.0;
};

inline double eta0_objective(const Eta0Problem& pr, const Vector& u) {
  const Eigen::Index p = pr.B.cols();
  const Vector dy = u.head(p);
  const Vector w = pr.B.transpose() * u.tail(pr.B.rows());
  return pr.kappa * dy.squaredNorm() + 0.5 * pr.c1 * w.squaredNorm();
}

inline Matrix eta0_constraint(const Eta0Problem& pr) {
  const Eigen::Index p = pr.B.cols(), l = pr.B.rows();
  Matrix C(p, p + l);
  C << pr.tau * Matrix::Identity(p, p), pr.s * pr.B.transpose();
  return C;
}

// Dense KKT solve through the pseudo-inverse. +inf when the constraint is inconsistent.
inline double eta0_kkt(const Eta0Problem& pr) {
  const Eigen::Index p = pr.B.cols(), l = pr.B.rows();
  const Matrix C = eta0_constraint(pr);
  Matrix H = Matrix::Zero(p + l, p + l);
  H.topLeftCorner(p, p) = 2.0 * pr.kappa * Matrix::Identity(p, p);
  H.bottomRightCorner(l, l) = pr.c1 * pr.B * pr.B.transpose();
  Matrix K = Matrix::Zero(2 * p + l, 2 * p + l);
  K.topLeftCorner(p + l, p + l) = H;
  K.topRightCorner(p + l, p) = C.transpose();
  K.bottomLeftCorner(p, p + l) = C;
  Vector rhs = Vector::Zero(2 * p + l);
  rhs.tail(p) = pr.v;
  const Vector sol = pinv(K) * rhs;
  const Vector u = sol.head(p + l);
  if ((C * u - pr.v).norm() > 1e-8 * std::max(1.0, pr.v.norm())) {
    return std::numeric_limits<double>::infinity();
  }
  if ((K * sol - rhs).norm() > 1e-8 * std::max(1.0, rhs.norm())) {
    return std::numeric_limits<double>::infinity();
  }
  return eta0_objective(pr, u);
}

// Projected gradient onto the affine feasible set, best of `starts` random starts.
inline double eta0_projected_gradient(const Eta0Problem& pr, int starts, std::uint64_t seed) {
  const Eigen::Index p = pr.B.cols(), l = pr.B.rows();
  const Matrix C = eta0_constraint(pr);
  const Matrix Cp = pinv(C);
  auto project = [&](const Vector& u) -> Vector { return u - Cp * (C * u - pr.v); };
  {
    const Vector u0 = project(Vector::Zero(p + l));
    if ((C * u0 - pr.v).norm() > 1e-8 * std::max(1.0, pr.v.norm())) {
      return std::numeric_limits<double>::infinity();
    }
  }
  const double lip = std::max(2.0 * pr.kappa, pr.c1 * (pr.B * pr.B.transpose()).norm()) + 1e-12;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd(0.0, 1.0);
  double best = std::numeric_limits<double>::infinity();
  for (int s = 0; s < starts; ++s) {
    Vector u(p + l);
    for (Eigen::Index i = 0; i < u.size(); ++i) u(i) = 3.0 * nd(rng);
    u = project(u);
    double val = eta0_objective(pr, u);
    for (int it = 0; it < 200000; ++it) {
      Vector g(p + l);
      g.head(p) = 2.0 * pr.kappa * u.head(p);
      g.tail(l) = pr.c1 * pr.B * (pr.B.transpose() * u.tail(l));
      const Vector un = project(u - g / lip);
      const double vn = eta0_objective(pr, un);
      const double change = (un - u).norm();
      u = un;
      val = vn;
      if (change < 1e-13 * std::max(1.0, u.norm())) break;
    }
    best = std::min(best, val);
  }
  return best;
}

// ADMM on the scalar instance f = a x^2/2, g = q y^2/2, A = B = 1, b = 0, G = 0, tau = 0.
struct ScalarIterate {
  double x, y, lambda, lambda_hat;
};
inline ScalarIterate scalar_admm_step(const ScalarIterate& prev, double a, double q, double beta,
                                      double theta) {
  ScalarIterate nx{};
  // argmin_x a x^2/2 - lambda x + beta/2 (x + y)^2
  nx.x = (prev.lambda - beta * prev.y) / (a + beta);
  nx.lambda_hat = prev.lambda - beta * (nx.x + prev.y);
  nx.y = (prev.lambda - beta * nx.x) / (q + beta);
  nx.lambda = prev.lambda - theta * beta * (nx.x + nx.y);
  return nx;
}
inline double scalar_lagrangian(double a, double q, double beta, double x, double y, double lam) {
  const double r = x + y;
  return 0.5 * a * x * x + 0.5 * q * y * y - lam * r + 0.5 * beta * r * r;
}

}  // namespace oracle

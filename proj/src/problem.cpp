#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "padmm/error.hpp"
#include "padmm/problem.hpp"

namespace padmm {

void ProblemInstance::check_consistency() const {
  if (!f || !g) throw ContractError("instance: both f and g oracles are required");
  if (B.rows() != A.rows() || b.size() != A.rows()) {
    throw ContractError("instance: A, B and b must have the same number of rows");
  }
  if (A.rows() == 0 || A.cols() == 0 || B.cols() == 0) {
    throw ContractError("instance: empty dimensions");
  }
  if (!A.allFinite() || !B.allFinite() || !b.allFinite()) {
    throw ContractError("instance: A, B, b must be finite");
  }
  if (!std::isfinite(L_bar_lower)) throw ContractError("instance: L_bar_lower must be finite");
  if (!(beta_bar >= 0.0) || !std::isfinite(beta_bar)) {
    throw ContractError("instance: beta_bar must be finite and >= 0");
  }
}

double aug_lagrangian(const ProblemInstance& inst, double beta, const Vector& x, const Vector& y,
                      const Vector& lambda) {
  if (x.size() != inst.n() || y.size() != inst.p() || lambda.size() != inst.l()) {
    throw ContractError("aug_lagrangian: dimension mismatch");
  }
  const double gy = inst.g->value(y);
  if (!std::isfinite(gy)) throw OracleError("g returned a non-finite value");
  const double fx = inst.f->value(x);
  if (fx == std::numeric_limits<double>::infinity()) return fx;
  const Vector r = inst.A * x + inst.B * y - inst.b;
  return fx + gy - lambda.dot(r) + 0.5 * beta * r.squaredNorm();
}

double delta0(const ProblemInstance& inst, double beta, const Vector& x0, const Vector& y0,
              const Vector& lambda0) {
  if (beta < inst.beta_bar) throw ConfigError("delta0: beta must be >= beta_bar");
  return aug_lagrangian(inst, beta, x0, y0, lambda0) - inst.L_bar_lower;
}

std::string ValidationReport::summary() const {
  std::ostringstream os;
  os << "A0 " << (a0_pass ? "ok" : "FAIL") << "; A1 " << (b_nonzero ? "" : "B=0 ")
     << "gap=" << a1_gap << (a1_pass ? " ok" : " FAIL") << "; A2 worst=" << a2_worst_violation
     << (a2_pass ? " ok" : " FAIL") << "; A3 worst=" << a3_worst_violation
     << (a3_pass ? " ok" : " FAIL") << "; grad fd=" << gradient_worst_error
     << (gradient_pass ? " ok" : " FAIL") << "; A4 " << (a4_pass ? "ok" : "FAIL");
  return os.str();
}

ValidationReport validate_assumptions(const ProblemInstance& inst, const ValidationOptions& opts) {
  if (opts.samples < 1) throw ContractError("validate_assumptions: samples must be >= 1");
  inst.check_consistency();

  ValidationReport rep;
  rep.lipschitz = inst.g->lipschitz();
  rep.weak_convexity = inst.g->weak_convexity();

  // A0: proper. The prox of the origin is a point of dom f for every built-in family.
  const Vector x_probe = inst.f->scaled_prox(Vector::Zero(inst.n()), 1.0);
  rep.a0_pass = std::isfinite(inst.f->value(x_probe));

  // A1
  rep.b_nonzero = !inst.B.isZero(0.0);
  rep.a1_gap = range_inclusion_gap(inst.B, inst.A, inst.b);
  rep.a1_pass = rep.b_nonzero && rep.a1_gap <= kRangeInclusionTolerance;

  // A2 / A3 / gradient consistency by sampling.
  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  auto draw = [&](Eigen::Index dim) {
    Vector v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) v(i) = normal(rng);
    return v;
  };

  const double L = rep.lipschitz;
  const double m = rep.weak_convexity;
  double a2 = -std::numeric_limits<double>::infinity();
  double a3 = -std::numeric_limits<double>::infinity();
  double grad_err = 0.0;
  bool a2_ok = true, a3_ok = true, grad_ok = true;

  if (rep.b_nonzero) {
    const RangeProjector proj_bt(inst.B.transpose());
    for (int s = 0; s < opts.samples; ++s) {
      // Mix of scales so both local and global behaviour is probed.
      const double scale = (s % 3 == 0) ? 0.1 : (s % 3 == 1 ? 1.0 : 5.0);
      const Vector y = 2.0 * draw(inst.p());
      const Vector y2 = y + scale * draw(inst.p());
      const Vector d = y2 - y;
      const Vector gy = inst.g->gradient(y);
      const Vector gy2 = inst.g->gradient(y2);

      const double lhs2 = proj_bt.coordinates(gy2 - gy).norm();
      const double rhs2 = L * d.norm();
      a2 = std::max(a2, lhs2 - rhs2);
      if (lhs2 > (1.0 + opts.tol) * rhs2 + 1e-12) a2_ok = false;

      const double vy = inst.g->value(y);
      const double vy2 = inst.g->value(y2);
      const double curv = vy2 - vy - gy.dot(d);
      const double viol3 = -(curv + 0.5 * m * d.squaredNorm());
      a3 = std::max(a3, viol3);
      const double tol3 = 1e-8 * d.squaredNorm() + 1e-13 * (1.0 + std::abs(vy) + std::abs(vy2));
      if (viol3 > tol3) a3_ok = false;

      // Directional derivative against a central difference.
      Vector dir = draw(inst.p());
      dir /= dir.norm();
      const double h = 1e-5 * std::max(1.0, y.norm());
      const double fd = (inst.g->value(y + h * dir) - inst.g->value(y - h * dir)) / (2.0 * h);
      const double err = std::abs(fd - gy.dot(dir));
      grad_err = std::max(grad_err, err);
      if (err > std::max(1e-6, 1e-4 * gy.norm())) grad_ok = false;
    }
  }
  rep.a2_worst_violation = a2;
  rep.a3_worst_violation = a3;
  rep.gradient_worst_error = grad_err;
  rep.a2_pass = rep.b_nonzero && a2_ok && L > 0.0;
  rep.a3_pass = rep.b_nonzero && a3_ok && m >= 0.0;
  rep.gradient_pass = rep.b_nonzero && grad_ok;

  rep.a4_pass = std::isfinite(inst.L_bar_lower) && inst.beta_bar >= 0.0;
  return rep;
}

}  // namespace padmm

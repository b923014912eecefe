#include "padmm/solver.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "padmm/error.hpp"

namespace padmm {

namespace {

void require_vector(const Vector& v, Eigen::Index n, const char* what) {
  if (v.size() != n) {
    throw ContractError(std::string(what) + " has dimension " + std::to_string(v.size()) +
                        ", expected " + std::to_string(n));
  }
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

}  // namespace

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::Converged:
      return "converged";
    case Outcome::IterationCap:
      return "iteration-cap";
    case Outcome::Error:
      return "error";
  }
  return "error";
}

// --- G ---------------------------------------------------------------------

Matrix resolve_G(const ProblemInstance& inst, const GSpec& spec, double beta) {
  const Eigen::Index n = inst.n();
  switch (spec.kind) {
    case GSpec::Kind::Zero:
      return Matrix::Zero(n, n);
    case GSpec::Kind::Explicit:
      if (spec.matrix.rows() != n || spec.matrix.cols() != n) {
        throw ConfigError("explicit G must be " + std::to_string(n) + "x" + std::to_string(n));
      }
      return spec.matrix;
    case GSpec::Kind::Linearized: {
      const Matrix AtA = inst.A.transpose() * inst.A;
      const double floor = beta * symmetric_eigen_range(AtA).max;
      const double alpha = spec.alpha.value_or(floor);
      if (alpha < floor * (1.0 - 1e-12)) {
        throw ConfigError("linearized G needs alpha >= beta * lambda_max(A^T A) = " + fmt(floor));
      }
      return alpha * Matrix::Identity(n, n) - beta * AtA;
    }
  }
  throw ConfigError("unknown G specification");
}

// --- x-step ----------------------------------------------------------------

XStep::XStep(const ProblemInstance& inst, double beta, const Matrix& G, bool linearized)
    : inst_(inst), beta_(beta), G_(G), linearized_(linearized) {
  const Matrix metric = G_ + beta_ * inst_.A.transpose() * inst_.A;
  weight_ = scalar_metric_weight(metric);
  if (linearized_) {
    if (!weight_) throw ConfigError("linearized G did not produce a scalar metric");
  } else {
    prox_ = inst_.f->bind_metric(metric);
  }
}

Vector XStep::operator()(const Vector& x_prev, const Vector& y_prev,
                         const Vector& lambda_prev) const {
  if (linearized_) {
    // Gradient step on the smooth part followed by the prox of f.
    const double alpha = *weight_;
    const Vector r = inst_.A * x_prev + inst_.B * y_prev - inst_.b;
    const Vector center = x_prev - inst_.A.transpose() * (beta_ * r - lambda_prev) / alpha;
    return inst_.f->scaled_prox(center, alpha);
  }
  // min f(x) + 0.5 x^T (G + beta A^T A) x + <linear, x>
  const Vector linear = -inst_.A.transpose() * lambda_prev +
                        beta_ * inst_.A.transpose() * (inst_.B * y_prev - inst_.b) - G_ * x_prev;
  return prox_(linear);
}

// --- y-step ----------------------------------------------------------------

YStep::YStep(const ProblemInstance& inst, double beta, double tau, double inner_tol, int max_iters)
    : inst_(inst), beta_(beta), tau_(tau), inner_tol_(inner_tol), max_iters_(max_iters) {
  BtB_ = inst_.B.transpose() * inst_.B;
  if (inst_.g->is_quadratic()) {
    const Eigen::Index p = inst_.p();
    Matrix h = inst_.g->hessian(Vector::Zero(p)) + beta_ * BtB_ + tau_ * Matrix::Identity(p, p);
    h = 0.5 * (h + h.transpose());
    quadratic_factor_.emplace(h);
    if (quadratic_factor_->info() != Eigen::Success) {
      throw ConfigError("y-subproblem is not strongly convex (Q + beta B^T B + tau I not PD)");
    }
  }
}

Vector YStep::objective_gradient(const Vector& y, const Vector& x_next, const Vector& y_prev,
                                 const Vector& lambda_prev) const {
  const Vector r = inst_.A * x_next + inst_.B * y - inst_.b;
  return inst_.g->gradient(y) - inst_.B.transpose() * lambda_prev +
         beta_ * inst_.B.transpose() * r + tau_ * (y - y_prev);
}

double YStep::objective(const Vector& y, const Vector& x_next, const Vector& y_prev,
                        const Vector& lambda_prev) const {
  const Vector r = inst_.A * x_next + inst_.B * y - inst_.b;
  return inst_.g->value(y) - lambda_prev.dot(inst_.B * y) + 0.5 * beta_ * r.squaredNorm() +
         0.5 * tau_ * (y - y_prev).squaredNorm();
}

YStepResult YStep::operator()(const Vector& x_next, const Vector& y_prev,
                              const Vector& lambda_prev) const {
  YStepResult out;
  if (quadratic_factor_) {
    // Stationarity: (Q + beta B^T B + tau I) y = B^T lambda - beta B^T (A x - b) + tau y_prev - c.
    const Vector c = inst_.g->gradient(Vector::Zero(inst_.p()));
    const Vector rhs = inst_.B.transpose() * (lambda_prev - beta_ * (inst_.A * x_next - inst_.b)) +
                       tau_ * y_prev - c;
    out.y = quadratic_factor_->solve(rhs);
    out.iterations = 1;
    out.grad_norm = objective_gradient(out.y, x_next, y_prev, lambda_prev).norm();
    return out;
  }

  const Eigen::Index p = inst_.p();
  const Matrix reg = beta_ * BtB_ + tau_ * Matrix::Identity(p, p);
  Vector y = y_prev;
  Vector grad = objective_gradient(y, x_next, y_prev, lambda_prev);
  const double target = inner_tol_ * std::max(1.0, grad.norm());
  double obj = objective(y, x_next, y_prev, lambda_prev);

  // Rounding floor of the gradient evaluation; no solver can get below it.
  auto noise_floor = [&](const Vector& yy) {
    const Vector r = inst_.A * x_next + inst_.B * yy - inst_.b;
    const double scale = inst_.g->gradient(yy).norm() + (inst_.B.transpose() * lambda_prev).norm() +
                         beta_ * (BtB_ * yy).norm() +
                         beta_ * (inst_.B.transpose() * (inst_.A * x_next - inst_.b)).norm() +
                         beta_ * (inst_.B.transpose() * r).norm() + tau_ * (yy.norm() + y_prev.norm());
    return 1e-14 * scale;
  };

  for (int it = 0; it < max_iters_; ++it) {
    const double gnorm = grad.norm();
    if (gnorm <= target || gnorm <= noise_floor(y)) {
      out.y = y;
      out.iterations = it;
      out.grad_norm = gnorm;
      return out;
    }
    Matrix h = inst_.g->hessian(y) + reg;
    Eigen::LLT<Matrix> llt(0.5 * (h + h.transpose()));
    Vector step;
    if (llt.info() == Eigen::Success) {
      step = -llt.solve(grad);
    } else {
      step = -grad;  // Hessian not PD away from the minimizer; fall back to steepest descent
    }
    // Inside the region of quadratic convergence the full step halves the
    // gradient; accept it without consulting objective values, which lose
    // resolution there. Otherwise backtrack (Armijo) on the strongly convex objective.
    Vector y_new = y + step;
    Vector g_new = objective_gradient(y_new, x_next, y_prev, lambda_prev);
    double obj_new = objective(y_new, x_next, y_prev, lambda_prev);
    if (!(g_new.norm() <= 0.5 * gnorm)) {
      double t = 1.0;
      const double slope = grad.dot(step);
      bool accepted = false;
      for (int ls = 0; ls < 60; ++ls) {
        if (obj_new <= obj + 1e-4 * t * slope) {
          accepted = true;
          break;
        }
        t *= 0.5;
        y_new = y + t * step;
        obj_new = objective(y_new, x_next, y_prev, lambda_prev);
      }
      if (!accepted) {
        throw InnerSolverError("y-step: line search stalled at gradient norm " + fmt(gnorm), gnorm);
      }
      g_new = objective_gradient(y_new, x_next, y_prev, lambda_prev);
    }
    y = std::move(y_new);
    obj = obj_new;
    grad = std::move(g_new);
  }
  const double gnorm = grad.norm();
  if (gnorm <= target || gnorm <= noise_floor(y)) {
    out.y = y;
    out.iterations = max_iters_;
    out.grad_norm = gnorm;
    return out;
  }
  throw InnerSolverError("y-step: Newton did not reach tolerance; gradient norm " + fmt(gnorm),
                         gnorm);
}

// --- single-step forms -----------------------------------------------------

Vector x_step(const ProblemInstance& inst, const SolverConfig& config, double beta,
              const Vector& x_prev, const Vector& y_prev, const Vector& lambda_prev) {
  const Matrix G = resolve_G(inst, config.G, beta);
  return XStep(inst, beta, G, config.G.kind == GSpec::Kind::Linearized)(x_prev, y_prev,
                                                                          lambda_prev);
}

Vector y_step(const ProblemInstance& inst, const SolverConfig& config, double beta,
              const Vector& x_next, const Vector& y_prev, const Vector& lambda_prev) {
  return YStep(inst, beta, config.tau, config.inner_tol, config.inner_max_iters)(x_next, y_prev,
                                                                               lambda_prev)
      .y;
}

Vector lambda_step(const Vector& lambda_prev, double theta, double beta,
                   const Vector& primal_residual) {
  if (lambda_prev.size() != primal_residual.size()) {
    throw ContractError("lambda_step: dimension mismatch");
  }
  return lambda_prev - theta * beta * primal_residual;
}

Vector lambda_hat(const Vector& lambda_prev, double beta, const Vector& x_next,
                  const Vector& y_prev, const ProblemInstance& inst) {
  return lambda_prev - beta * (inst.A * x_next + inst.B * y_prev - inst.b);
}

std::pair<Vector, double> consistent_multiplier(const ProblemInstance& inst, const Vector& y0) {
  const Vector grad = inst.g->gradient(y0);
  const Matrix Bt = inst.B.transpose();
  const Vector lambda = Bt.completeOrthogonalDecomposition().solve(grad);
  return {lambda, (Bt * lambda - grad).norm()};
}

// --- setup -----------------------------------------------------------------

constexpr const char* kEta0InfeasibleMessage =
    "eta0 is infinite: the seeding program is infeasible. Set tau > 0, or start with a "
    "multiplier satisfying B^T lambda0 = grad g(y0)";

RunSetup prepare_run(const ProblemInstance& inst, const SolverConfig& config,
                     const StartPoint& start) {
  inst.check_consistency();
  require_vector(start.x0, inst.n(), "x0");
  require_vector(start.y0, inst.p(), "y0");
  require_vector(start.lambda0, inst.l(), "lambda0");
  if (!(config.tau >= 0.0)) throw ConfigError("tau must be >= 0");
  if (!(config.rho > 0.0)) throw ConfigError("rho must be positive");
  if (config.max_iters < 1) throw ConfigError("max_iters must be >= 1");
  if (!(config.inner_tol > 0.0)) throw ConfigError("inner_tol must be positive");

  RunSetup s;
  DerivedConstants& c = s.constants;
  c.theta = config.theta;
  c.tau = config.tau;
  c.gamma = gamma_of(config.theta);
  c.spectral = spectral_summary(inst.B);
  c.L = inst.g->lipschitz();
  c.m = inst.g->weak_convexity();

  // eta_0 feasibility does not depend on beta; report it before admissibility.
  const Vector gy0 = inst.g->gradient(start.y0);
  const Vector bt_lambda0 = inst.B.transpose() * start.lambda0;
  const RangeProjector range_bt(inst.B.transpose());
  Eta0Input ein;
  ein.theta = c.theta;
  ein.tau = c.tau;
  ein.rhs = bt_lambda0 - gy0;
  ein.rhs_scale = bt_lambda0.norm() + gy0.norm();
  if (!eta0_feasible(ein, range_bt)) throw ConfigError(kEta0InfeasibleMessage);

  if (config.beta) {
    c.beta = *config.beta;
    if (!(c.beta > 0.0)) throw ConfigError("beta must be positive");
  } else {
    AdmissibilityInput in;
    in.theta = c.theta;
    in.tau = c.tau;
    in.m = c.m;
    in.L = c.L;
    in.sigma_B = c.spectral.sigma_B;
    in.sigma_B_plus = c.spectral.sigma_B_plus;
    in.beta_bar = inst.beta_bar;
    in.margin = config.beta_margin;
    c.beta = min_admissible_beta(in);
  }
  if (c.beta < inst.beta_bar) {
    throw ConfigError("beta = " + fmt(c.beta) + " is below beta_bar = " + fmt(inst.beta_bar));
  }

  c.c1 = c1_of(c.theta, c.beta, c.spectral.sigma_B_plus);
  c.delta1 = delta1_of(c.beta, c.tau, c.m, c.L, c.gamma, c.spectral.sigma_B,
                       c.spectral.sigma_B_plus);
  if (!(c.delta1 > 0.0)) {
    throw ConfigError("inadmissible parameters: delta1 = " + fmt(c.delta1) +
                      " <= 0 (increase beta or tau, or use beta = auto)");
  }
  c.delta2 = delta2_of(c.beta, c.theta, c.gamma, c.L, c.tau, c.spectral.sigma_B_plus, c.delta1);
  c.kappa = (c.beta * c.spectral.sigma_B + c.tau - c.m) / 4.0;

  s.G = resolve_G(inst, config.G, c.beta);
  const Matrix Gsym = 0.5 * (s.G + s.G.transpose());
  if ((s.G - Gsym).norm() > 1e-12 * std::max(1.0, s.G.norm())) {
    throw ConfigError("G must be symmetric");
  }
  if (symmetric_eigen_range(Gsym).min < -1e-10 * std::max(1.0, s.G.norm())) {
    throw ConfigError("G must be positive semidefinite");
  }

  // eta_0 program and its seed.
  ein.beta = c.beta;
  ein.m = c.m;
  ein.sigma_B = c.spectral.sigma_B;
  ein.sigma_B_plus = c.spectral.sigma_B_plus;
  const ReducedSvd svd = reduced_svd(inst.B);
  const Eta0Solution eta = solve_eta0(ein, range_bt);
  if (!eta.feasible) throw ConfigError(kEta0InfeasibleMessage);
  c.eta0 = eta.value;
  s.dy0 = eta.dy0;
  s.w0 = eta.w0;
  // B = U S V^T, so lambda = U S^{-1} V^T w gives B^T lambda = V V^T w = w for w in Im(B^T).
  s.dlambda0 = svd.left * (svd.right.transpose() * eta.w0).cwiseQuotient(svd.values);

  c.delta0 = delta0(inst, c.beta, start.x0, start.y0, start.lambda0);
  if (!std::isfinite(c.delta0)) throw ConfigError("x0 is outside dom f");

  s.prox_weight = XStep(inst, c.beta, s.G, config.G.kind == GSpec::Kind::Linearized).prox_weight();
  return s;
}

// --- main loop -------------------------------------------------------------

RunResult run(const ProblemInstance& inst, const SolverConfig& config, const StartPoint& start,
              const IterateCallback& on_iterate) {
  RunResult res;
  res.setup = prepare_run(inst, config, start);
  const DerivedConstants& c = res.setup.constants;
  const Matrix& G = res.setup.G;
  const XStep xs(inst, c.beta, G, config.G.kind == GSpec::Kind::Linearized);
  const YStep ys(inst, c.beta, c.tau, config.inner_tol, config.inner_max_iters);
  const Matrix Bt = inst.B.transpose();

  IterateRecord r0;
  r0.k = 0;
  r0.x = start.x0;
  r0.y = start.y0;
  r0.lambda = start.lambda0;
  r0.lambda_hat = start.lambda0;
  r0.dx = Vector::Zero(inst.n());
  r0.dy = res.setup.dy0;
  r0.dlambda = res.setup.dlambda0;
  r0.L_beta = aug_lagrangian(inst, c.beta, r0.x, r0.y, r0.lambda);
  r0.delta_k = c.delta0;
  r0.eta_k = c.eta0;
  r0.merit = c.delta0 + c.eta0;
  r0.res_primal = (inst.A * r0.x + inst.B * r0.y - inst.b).norm();
  r0.res_dual_y = (inst.g->gradient(r0.y) - Bt * r0.lambda).norm();
  r0.res_dual_x = 0.0;
  if (on_iterate) on_iterate(r0);
  res.trace.push_back(std::move(r0));

  const double lambda_cap = kDivergenceFactor * (1.0 + start.lambda0.norm());
  res.outcome = Outcome::IterationCap;
  res.iterations = config.max_iters;

  for (int k = 1; k <= config.max_iters; ++k) {
    const IterateRecord& prev = res.trace.back();
    IterateRecord rec;
    rec.k = k;
    try {
      rec.x = xs(prev.x, prev.y, prev.lambda);
      rec.lambda_hat = lambda_hat(prev.lambda, c.beta, rec.x, prev.y, inst);
      YStepResult yr = ys(rec.x, prev.y, prev.lambda);
      rec.y = std::move(yr.y);
      rec.inner_iters = yr.iterations;
      rec.inner_grad_norm = yr.grad_norm;
    } catch (const InnerSolverError& e) {
      res.outcome = Outcome::Error;
      res.iterations = k - 1;
      res.message = e.what();
      return res;
    }
    const Vector r = inst.A * rec.x + inst.B * rec.y - inst.b;
    rec.lambda = lambda_step(prev.lambda, c.theta, c.beta, r);
    rec.dx = rec.x - prev.x;
    rec.dy = rec.y - prev.y;
    rec.dlambda = rec.lambda - prev.lambda;
    rec.L_beta = aug_lagrangian(inst, c.beta, rec.x, rec.y, rec.lambda);
    rec.delta_k = rec.L_beta - inst.L_bar_lower;
    rec.eta_k = 0.5 * c.c1 * (Bt * rec.dlambda).squaredNorm() + c.kappa * rec.dy.squaredNorm();
    rec.merit = rec.delta_k + rec.eta_k;
    rec.res_primal = r.norm();
    rec.res_dual_y = (inst.g->gradient(rec.y) - Bt * rec.lambda_hat).norm();
    rec.res_dual_x = (G * rec.dx).norm();

    const bool finite = rec.x.allFinite() && rec.y.allFinite() && rec.lambda.allFinite() &&
                        std::isfinite(rec.L_beta);
    if (!finite || rec.lambda.norm() > lambda_cap) {
      res.outcome = Outcome::Error;
      res.iterations = k - 1;
      res.message = "iterates diverged at k=" + std::to_string(k) +
                    " (multiplier norm exceeded cap); beta is likely inadmissible";
      return res;
    }
    if (on_iterate) on_iterate(rec);
    const double worst = std::max({rec.res_primal, rec.res_dual_y, rec.res_dual_x});
    res.trace.push_back(std::move(rec));
    if (worst <= config.rho) {
      res.outcome = Outcome::Converged;
      res.iterations = k;
      return res;
    }
  }
  return res;
}

}  // namespace padmm

#include <doctest.h>

#include <cmath>
#include <map>
#include <memory>

#include "padmm/certifier.hpp"
#include "padmm/generators.hpp"
#include "padmm/parameters.hpp"

using namespace padmm;

namespace {

ProblemInstance scalar_instance() {
  ProblemInstance inst;
  inst.A = Matrix::Ones(1, 1);
  inst.B = Matrix::Ones(1, 1);
  inst.b = Vector::Zero(1);
  inst.f = std::make_shared<QuadraticFunction>(Matrix::Ones(1, 1), Vector::Zero(1));
  inst.g = std::make_shared<QuadraticSmooth>(Matrix::Ones(1, 1), Vector::Zero(1));
  return inst;
}

SolverConfig scalar_config() {
  SolverConfig c;
  c.theta = 1.0;
  c.beta = 4.0;
  c.rho = 1e-10;
  c.max_iters = 500;
  return c;
}

StartPoint scalar_start() { return {Vector::Zero(1), Vector::Ones(1), Vector::Ones(1)}; }

// name@k -> check
std::map<std::string, CheckResult> index_checks(const Certificate& cert) {
  std::map<std::string, CheckResult> out;
  for (const CheckResult& c : cert.checks) out[c.name + "@" + std::to_string(c.iteration)] = c;
  return out;
}

}  // namespace

TEST_CASE("scalar fixture: hand-derived slacks at k = 1") {
  // x1 = -0.6, y1 = 0.68, lambda1 = 0.68; dy1 = -0.32, dlambda1 = -0.32, u1 = -0.32.
  // L(x0,y0,l0) = 1.5, L(x1,y0,l0) = 0.6, L(x1,y1,l0) = 0.344, L(x1,y1,l1) = 0.3696.
  const ProblemInstance inst = scalar_instance();
  const SolverConfig cfg = scalar_config();
  const RunResult res = run(inst, cfg, scalar_start());
  const Certificate cert = certify(inst, cfg, res);
  CHECK(cert.all_pass());
  CHECK(cert.failed == 0);
  CHECK(cert.passed == static_cast<int>(cert.checks.size()));
  const auto idx = index_checks(cert);

  // x-step drop 0.9 against |dx|_G^2 / 2 = 0
  CHECK(idx.at("descent_x_step@1").slack == doctest::Approx(0.9).epsilon(1e-12));
  // y-step drop 0.256 against (beta sigma_B + tau - m)/2 |dy|^2 = 0.2048
  CHECK(idx.at("descent_y_step@1").slack == doctest::Approx(0.0512).epsilon(1e-12));
  // multiplier step raises L by exactly |dlambda|^2 / (beta theta) = 0.0256
  CHECK(std::abs(idx.at("descent_multiplier_step@1").slack) <= 1e-15);
  CHECK(std::abs(idx.at("dual_recursion@1").slack) <= 1e-15);
  // Theta1 = 0.0256 equals gamma/(beta sigma+) |u|^2 = 0.1024 / 4
  CHECK(std::abs(idx.at("theta1_bound@1").slack) <= 1e-15);
  // 3 (L^2 + tau^2)(|dy1|^2 + |dy0|^2) = 0.3072 against |u|^2 = 0.1024
  CHECK(idx.at("u_bound@1").slack == doctest::Approx(0.2048).epsilon(1e-12));
  // kappa = 1, Theta2 = -0.1024; eta1 = 0.1024
  CHECK(idx.at("theta2_nonpositive@1").slack == doctest::Approx(0.1024).epsilon(1e-12));
  CHECK(idx.at("eta_nonnegative@1").slack == doctest::Approx(0.1024).epsilon(1e-12));
  // merit 1.5 -> 0.472, bound -delta1 |dy1|^2 = -0.0256
  CHECK(idx.at("merit_decrease@1").slack == doctest::Approx(1.0024).epsilon(1e-12));
  CHECK(idx.at("merit_nonnegative@1").slack == doctest::Approx(0.472).epsilon(1e-12));
  CHECK(idx.at("merit_nonnegative@0").slack == doctest::Approx(1.5).epsilon(1e-12));
  // M = max(eta0, Delta0) = 1.5; sum = 0.25 * 0.1024 + 0.1024 / 28
  CHECK(idx.at("cumulative_bound@1").slack ==
        doctest::Approx(4.5 - 0.0256 - 0.1024 / 28.0).epsilon(1e-12));
  CHECK(idx.at("primal_residual_identity@1").pass);
  CHECK(idx.at("dual_residual_identity@1").pass);
  CHECK(idx.at("x_inclusion@1").pass);
}

TEST_CASE("rate bounds at k = 1 on the scalar fixture") {
  const ProblemInstance inst = scalar_instance();
  const RunResult res = run(inst, scalar_config(), scalar_start());
  const RateBounds b = theoretical_rate_bounds(res.setup.constants, 1);
  CHECK(b.dx_G == doctest::Approx(3.0).epsilon(1e-14));               // sqrt(6 M)
  CHECK(b.dual == doctest::Approx(12.0 * std::sqrt(2.0)).epsilon(1e-14));
  CHECK(b.primal == doctest::Approx(std::sqrt(126.0) / 4.0).epsilon(1e-14));  // sqrt(3M/delta2)/(beta theta)
  // bounds shrink like 1/sqrt(k)
  const RateBounds b100 = theoretical_rate_bounds(res.setup.constants, 100);
  CHECK(b100.dx_G == doctest::Approx(b.dx_G / 10.0));
  CHECK(b100.dual == doctest::Approx(b.dual / 10.0));
  CHECK(b100.primal == doctest::Approx(b.primal / 10.0));
}

TEST_CASE("stationary start certifies with zero slack everywhere it should") {
  const ProblemInstance inst = scalar_instance();
  const SolverConfig cfg = scalar_config();
  const RunResult res = run(inst, cfg, {Vector::Zero(1), Vector::Zero(1), Vector::Zero(1)});
  const Certificate cert = certify(inst, cfg, res);
  CHECK(cert.all_pass());
  for (const CheckResult& c : cert.checks) {
    if (c.name == "merit_decrease" || c.name == "descent_x_step") CHECK(std::abs(c.slack) <= 1e-15);
  }
}

TEST_CASE("tampered traces are caught") {
  const ProblemInstance inst = scalar_instance();
  const SolverConfig cfg = scalar_config();
  RunResult res = run(inst, cfg, scalar_start());
  REQUIRE(certify(inst, cfg, res).all_pass());

  SUBCASE("inflated merit breaks monotonicity") {
    res.trace[3].merit += 1.0;
    const Certificate cert = certify(inst, cfg, res);
    CHECK_FALSE(cert.all_pass());
    CHECK(cert.worst_margin < 0.0);
  }
  SUBCASE("a perturbed multiplier breaks the dual recursion") {
    res.trace[2].dlambda(0) += 1e-3;
    const Certificate cert = certify(inst, cfg, res);
    CHECK_FALSE(cert.all_pass());
    CHECK(cert.worst_check.find("@") != std::string::npos);
  }
  SUBCASE("a wrong x breaks the inclusion") {
    res.trace[4].x(0) += 1e-3;
    const Certificate cert = certify(inst, cfg, res);
    bool caught = false;
    for (const CheckResult& c : cert.checks)
      if (c.name == "x_inclusion" && c.iteration == 4 && !c.pass) caught = true;
    CHECK(caught);
  }
}

TEST_CASE("ToleranceModel") {
  const ToleranceModel tol;
  CHECK(tol.at(0.0) == doctest::Approx(1e-10));
  CHECK(tol.at(1.0) == doctest::Approx(1e-10 + 1e-8 + 1e-11));
  const CheckResult ok = tol.make("x", 3, -5e-11, 0.0);
  CHECK(ok.pass);
  const CheckResult bad = tol.make("x", 3, -2e-10, 0.0);
  CHECK_FALSE(bad.pass);
  CHECK(bad.iteration == 3);
}

TEST_CASE("best_iterate takes the smallest index on ties") {
  const ProblemInstance inst = scalar_instance();
  const RunResult res = run(inst, scalar_config(), {Vector::Zero(1), Vector::Zero(1), Vector::Zero(1)});
  std::vector<IterateRecord> trace = res.trace;
  trace.push_back(trace.back());
  trace.back().k = static_cast<int>(trace.size()) - 1;
  CHECK(best_iterate(trace, res.setup.constants, res.setup.G, trace.back().k) == 1);
}

TEST_CASE("corollary regime detection") {
  GeneratorSpec spec{"quad-quad", 4, 3, 3, 17, {}};
  const ProblemInstance inst = generate_instance(spec);
  const SpectralSummary s = spectral_summary(inst.B);
  const double m = inst.g->weak_convexity(), L = inst.g->lipschitz();
  SolverConfig cfg;
  cfg.theta = 1.3;
  cfg.beta = 1.01 * std::max(inst.beta_bar, corollary_min_beta(cfg.theta, s.sigma_B, m, L));
  cfg.max_iters = 300;
  cfg.rho = 1e-9;
  const Vector y0 = Vector::Zero(3);
  const auto [lam0, resid] = consistent_multiplier(inst, y0);
  REQUIRE(resid < 1e-10);
  const StartPoint start{inst.f->scaled_prox(Vector::Zero(4), 1.0), y0, lam0};
  const RunResult res = run(inst, cfg, start);
  const auto cor = check_corollary_regime(inst, cfg, res.setup);
  REQUIRE(cor.has_value());
  for (const CheckResult& c : *cor) CHECK(c.pass);
  const Certificate cert = certify(inst, cfg, res);
  CHECK(cert.corollary_regime);
  CHECK(cert.all_pass());

  SUBCASE("tau > 0 leaves the regime") {
    SolverConfig c2 = cfg;
    c2.tau = 0.5;
    const RunResult r2 = run(inst, c2, start);
    CHECK_FALSE(check_corollary_regime(inst, c2, r2.setup).has_value());
  }
  SUBCASE("an inconsistent multiplier leaves the regime") {
    StartPoint s2 = start;
    s2.lambda0 = lam0 + Vector::Ones(3);
    const RunResult r2 = run(inst, cfg, s2);
    CHECK(r2.setup.constants.eta0 > 0.0);
    CHECK_FALSE(check_corollary_regime(inst, cfg, r2.setup).has_value());
  }
}

TEST_CASE("certificates of generated runs pass") {
  for (const std::string fam : generator_families()) {
    for (const std::string mode : {"full", "deficient"}) {
      GeneratorSpec spec{fam, 6, 5, 5, 77, {}};
      spec.params.b_mode = mode;
      const ProblemInstance inst = generate_instance(spec);
      SolverConfig cfg;
      cfg.theta = 0.7;
      cfg.tau = mode == "deficient" ? inst.g->weak_convexity() + 1.0 : 0.0;
      cfg.G = fam == "quad-quad" ? GSpec::zero() : GSpec::linearized();
      cfg.max_iters = 120;
      const StartPoint start{inst.f->scaled_prox(Vector::Zero(6), 1.0), Vector::Zero(5),
                             Vector::Zero(5)};
      const RunResult res = run(inst, cfg, start);
      REQUIRE(res.outcome != Outcome::Error);
      const Certificate cert = certify(inst, cfg, res);
      INFO(fam, " ", mode, " worst ", cert.worst_check, " ", cert.worst_margin);
      CHECK(cert.all_pass());
    }
  }
}

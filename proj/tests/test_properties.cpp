#include <doctest.h>

#include <cmath>
#include <random>

#include "padmm/certifier.hpp"
#include "padmm/generators.hpp"
#include "padmm/parameters.hpp"
#include "support/oracles.hpp"

using namespace padmm;

namespace {

Matrix gaussian(std::mt19937_64& rng, Eigen::Index r, Eigen::Index c) {
  std::normal_distribution<double> nd(0.0, 1.0);
  Matrix m(r, c);
  for (Eigen::Index j = 0; j < c; ++j)
    for (Eigen::Index i = 0; i < r; ++i) m(i, j) = nd(rng);
  return m;
}

}  // namespace

TEST_CASE("projection onto Im(S^T) is bounded by |S u| / sqrt(sigma+)") {
  std::mt19937_64 rng(61);
  std::uniform_int_distribution<int> dim(1, 7);
  int tight = 0;
  for (int t = 0; t < 1000; ++t) {
    const int r = dim(rng), c = dim(rng);
    const int k = 1 + t % std::min(r, c);
    const Matrix S = gaussian(rng, r, k) * gaussian(rng, k, c);
    const Vector u = gaussian(rng, c, 1).col(0);
    const double sigma_plus = oracle::spectrum_BtB(S.transpose()).min_positive;
    const double lhs = project_onto_range(S.transpose(), u).norm();
    const double rhs = (S * u).norm() / std::sqrt(sigma_plus);
    CHECK(lhs <= rhs + 1e-8);
    if (rhs - lhs < 1e-6 * rhs) ++tight;
  }
  // equality is attained when the projection lies in the bottom singular space (k = 1)
  CHECK(tight > 0);
}

TEST_CASE("parameter invariants on random admissible configurations") {
  std::mt19937_64 rng(62);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 500; ++t) {
    AdmissibilityInput in;
    in.theta = 0.02 + 1.96 * u(rng);
    in.L = 0.1 + 5 * u(rng);
    in.m = in.L * u(rng);
    in.sigma_B_plus = 0.1 + 3 * u(rng);
    in.sigma_B = t % 3 == 0 ? 0.0 : in.sigma_B_plus * (0.2 + 0.8 * u(rng));
    in.tau = in.sigma_B == 0.0 ? in.m + 0.1 + u(rng) : (t % 2) * u(rng);
    in.beta_bar = 3 * u(rng);
    in.margin = 1.0 + u(rng);
    const double beta = min_admissible_beta(in);
    CHECK(beta >= in.beta_bar);
    const double g = gamma_of(in.theta);
    const double d1 = delta1_of(beta, in.tau, in.m, in.L, g, in.sigma_B, in.sigma_B_plus);
    CHECK(d1 > 0.0);
    const double d2 = delta2_of(beta, in.theta, g, in.L, in.tau, in.sigma_B_plus, d1);
    CHECK(d2 > 0.0);
    CHECK(d2 <= 1.0 / (beta * in.theta) * (1 + 1e-15));
    const double c1 = c1_of(in.theta, beta, in.sigma_B_plus);
    CHECK(c1 >= 0.0);
    CHECK((c1 == 0.0) == (in.theta == 1.0));
  }
}

TEST_CASE("eta0 is zero exactly when the constraint right-hand side vanishes") {
  std::mt19937_64 rng(63);
  for (int t = 0; t < 100; ++t) {
    const Matrix B = gaussian(rng, 4, 3);
    const SpectralSummary s = spectral_summary(B);
    Eta0Input in;
    in.theta = 0.3 + 0.2 * (t % 7);
    in.tau = (t % 2) * 0.7;
    in.beta = 5.0 / s.sigma_B + 1.0;
    in.m = 0.2;
    in.sigma_B = s.sigma_B;
    in.sigma_B_plus = s.sigma_B_plus;
    in.rhs = Vector::Zero(3);
    CHECK(solve_eta0(in, B).value == 0.0);
    in.rhs = gaussian(rng, 3, 1).col(0);
    const Eta0Solution e = solve_eta0(in, B);
    if (in.theta == 1.0 && in.tau == 0.0) {
      CHECK_FALSE(e.feasible);
    } else {
      CHECK(e.value > 0.0);
    }
  }
}

TEST_CASE("merit is nonincreasing and nonnegative on short random runs") {
  for (int i = 0; i < 24; ++i) {
    const std::string fam = generator_families()[static_cast<std::size_t>(i) % 4];
    GeneratorSpec spec{fam, 3 + i % 5, 2 + i % 4, 2 + (i / 2) % 4, 300 + static_cast<std::uint64_t>(i), {}};
    const ProblemInstance inst = generate_instance(spec);
    const SpectralSummary s = spectral_summary(inst.B);
    SolverConfig cfg;
    cfg.theta = 0.25 + 0.07 * i;
    cfg.tau = s.sigma_B > 0 ? 0.0 : inst.g->weak_convexity() + 0.5;
    cfg.G = fam == "quad-quad" ? GSpec::zero() : GSpec::linearized();
    cfg.max_iters = 60;
    const RunResult res = run(inst, cfg,
                              {inst.f->scaled_prox(Vector::Zero(inst.n()), 1.0),
                               Vector::Zero(inst.p()), Vector::Zero(inst.l())});
    REQUIRE(res.outcome != Outcome::Error);
    const double tol = 1e-8 * (1 + std::abs(res.trace.front().merit));
    for (std::size_t k = 1; k < res.trace.size(); ++k) {
      CHECK(res.trace[k].merit <= res.trace[k - 1].merit + tol);
      CHECK(res.trace[k].merit >= -tol);
    }
  }
}

TEST_CASE("lambda_hat relation: lambda_k - lambda_hat_k = -beta B dy_k - (theta - 1) beta r_k") {
  const ProblemInstance inst = generate_instance({"quad-quad", 5, 4, 4, 8, {}});
  SolverConfig cfg;
  cfg.theta = 1.6;
  cfg.max_iters = 30;
  const RunResult res = run(inst, cfg, {Vector::Zero(5), Vector::Zero(4), Vector::Zero(4)});
  const double beta = res.setup.constants.beta;
  for (std::size_t k = 1; k < res.trace.size(); ++k) {
    const IterateRecord& r = res.trace[k];
    const Vector resid = inst.A * r.x + inst.B * r.y - inst.b;
    const Vector expect = -beta * inst.B * r.dy - (cfg.theta - 1.0) * beta * resid;
    const Vector got = r.lambda - r.lambda_hat;
    CHECK((got - expect).norm() <= 1e-9 * std::max(1.0, expect.norm()));
  }
}

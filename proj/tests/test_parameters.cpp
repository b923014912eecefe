#include <doctest.h>

#include <cmath>
#include <random>

#include "padmm/error.hpp"
#include "padmm/parameters.hpp"
#include "support/oracles.hpp"

using namespace padmm;

TEST_CASE("gamma") {
  CHECK(gamma_of(1.0) == 1.0);
  CHECK(gamma_of(0.5) == doctest::Approx(2.0));
  CHECK(gamma_of(1.5) == doctest::Approx(6.0));
  CHECK_THROWS_AS(gamma_of(0.0), DomainError);
  CHECK_THROWS_AS(gamma_of(2.0), DomainError);
  CHECK_THROWS_AS(gamma_of(-0.1), DomainError);
}

TEST_CASE("gamma is minimized at theta = 1 and blows up at the ends") {
  for (int i = 1; i < 200; ++i) {
    const double t = i / 100.0;
    const double d = 1.0 - std::abs(t - 1.0);
    CHECK(gamma_of(t) * d * d == doctest::Approx(t).epsilon(1e-14));
    if (t != 1.0) CHECK(gamma_of(t) > 1.0);
    // over-relaxation costs more than the mirrored under-relaxation
    if (t > 1.0) CHECK(gamma_of(t) > gamma_of(2.0 - t));
  }
  CHECK(gamma_of(1.999) > 1e6);
  CHECK(gamma_of(0.001) > 999.0);
}

TEST_CASE("c1") {
  CHECK(c1_of(1.0, 3.0, 0.7) == 0.0);
  CHECK(c1_of(0.5, 1.0, 1.0) == doctest::Approx(4.0));
  CHECK(c1_of(1.5, 2.0, 1.0) == doctest::Approx(2.0 / 3.0));
  CHECK_THROWS_AS(c1_of(1.5, 0.0, 1.0), DomainError);
  CHECK_THROWS_AS(c1_of(1.5, 1.0, 0.0), DomainError);
}

TEST_CASE("delta1 and delta2") {
  CHECK(delta1_of(10, 0, 0, 1, 1, 1, 1) == doctest::Approx(2.2));
  CHECK(delta1_of(4, 0, 0, 1, 1, 1, 1) == doctest::Approx(0.25));
  CHECK(delta1_of(1, 0, 0, 1, 1, 1, 1) == doctest::Approx(-2.75));
  CHECK(delta2_of(4, 1, 1, 1, 0, 1, 0.25) == doctest::Approx(1.0 / 28.0));
  CHECK_THROWS_AS(delta2_of(4, 1, 1, 1, 0, 1, 0.0), ConfigError);
  CHECK(delta2_of(4, 1, 1, 1, 0, 1, 1e30) == doctest::Approx(0.25));
  // delta2 * beta * theta <= 1 on a grid.
  for (double beta : {0.5, 2.0, 30.0})
    for (double theta : {0.3, 1.0, 1.7})
      for (double d1 : {1e-3, 1.0, 50.0}) {
        const double d2 = delta2_of(beta, theta, gamma_of(theta), 2.0, 0.5, 0.8, d1);
        CHECK(d2 > 0.0);
        CHECK(d2 * beta * theta <= 1.0 + 1e-15);
      }
}

TEST_CASE("min_admissible_beta") {
  AdmissibilityInput in;
  in.theta = 1.0;
  in.tau = 0.0;
  in.m = 0.0;
  in.L = 1.0;
  in.sigma_B = 1.0;
  in.sigma_B_plus = 1.0;
  in.beta_bar = 0.0;
  in.margin = 1.1;
  SUBCASE("invertible B") {
    const double beta = min_admissible_beta(in);
    // positive root of beta^2 - 12 = 0
    CHECK(beta == doctest::Approx(1.1 * std::sqrt(12.0)).epsilon(1e-14));
    CHECK(beta == doctest::Approx(3.8105).epsilon(1e-4));
    CHECK(delta1_of(beta, 0, 0, 1, 1, 1, 1) > 0.0);
  }
  SUBCASE("singular B with tau > m") {
    in.sigma_B = 0.0;
    in.tau = 2.0;
    in.m = 1.0;
    const double beta = min_admissible_beta(in);
    CHECK(beta == doctest::Approx(66.0));
    CHECK(delta1_of(beta, 2.0, 1.0, 1.0, 1.0, 0.0, 1.0) > 0.0);
  }
  SUBCASE("singular B without proximal term") {
    in.sigma_B = 0.0;
    CHECK_THROWS_AS(min_admissible_beta(in), ConfigError);
  }
  SUBCASE("beta_bar dominates") {
    in.beta_bar = 100.0;
    CHECK(min_admissible_beta(in) == doctest::Approx(110.0));
  }
}

TEST_CASE("min_admissible_beta always yields delta1 > 0") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 500; ++t) {
    AdmissibilityInput in;
    in.theta = 0.02 + 1.96 * u(rng);
    in.m = 3.0 * u(rng);
    in.L = 0.1 + 5.0 * u(rng);
    in.sigma_B_plus = 0.05 + 3.0 * u(rng);
    in.sigma_B = (t % 3 == 0) ? 0.0 : in.sigma_B_plus * (0.5 + 0.5 * u(rng));
    in.tau = (in.sigma_B == 0.0) ? in.m + 0.1 + u(rng) : 2.0 * u(rng);
    in.beta_bar = (t % 5 == 0) ? 10.0 * u(rng) : 0.0;
    const double beta = min_admissible_beta(in);
    const double d1 = delta1_of(beta, in.tau, in.m, in.L, gamma_of(in.theta), in.sigma_B,
                                in.sigma_B_plus);
    CHECK(d1 > 0.0);
    CHECK(beta >= in.beta_bar);
  }
}

TEST_CASE("corollary_beta_check") {
  const CorollaryCheck a = corollary_beta_check(10, 1, 1, 0, 1, 1);
  CHECK(a.slack == doctest::Approx(1.25 - 0.3));
  CHECK(a.pass);
  const CorollaryCheck b = corollary_beta_check(4, 1, 1, 0, 1, 1);
  CHECK(b.slack == doctest::Approx(0.5 - 0.75));
  CHECK_FALSE(b.pass);
  const CorollaryCheck c = corollary_beta_check(std::sqrt(24.0), 1, 1, 0, 1, 1);
  CHECK(std::abs(c.slack) < 1e-15);
  CHECK(c.delta1_lo == doctest::Approx(std::sqrt(24.0) / 8));
  CHECK(c.inv_delta2_hi == doctest::Approx(3 * std::sqrt(24.0)));
  CHECK_THROWS_AS(corollary_beta_check(1, 1, 0, 0, 1, 1), DomainError);
  CHECK(corollary_min_beta(1.0, 1.0, 0.0, 1.0) == doctest::Approx(std::sqrt(24.0)));
}

TEST_CASE("corollary condition implies the delta sandwiches") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 300; ++t) {
    const double theta = 0.05 + 1.9 * u(rng), sigma = 0.1 + 2 * u(rng), m = 2 * u(rng);
    const double L = 0.1 + 3 * u(rng), gamma = gamma_of(theta);
    const double beta = corollary_min_beta(theta, sigma, m, L) * (1.0 + 3.0 * u(rng));
    const CorollaryCheck cc = corollary_beta_check(beta, theta, sigma, m, gamma, L);
    REQUIRE(cc.pass);
    const double d1 = delta1_of(beta, 0.0, m, L, gamma, sigma, sigma);
    const double d2 = delta2_of(beta, theta, gamma, L, 0.0, sigma, d1);
    CHECK(d1 >= cc.delta1_lo * (1 - 1e-12));
    CHECK(d1 <= cc.delta1_hi * (1 + 1e-12));
    CHECK(1.0 / d2 >= cc.inv_delta2_lo * (1 - 1e-12));
    CHECK(1.0 / d2 <= cc.inv_delta2_hi * (1 + 1e-12));
  }
}

namespace {

Eta0Input eta_input(double theta, double tau, double beta, double m, const Matrix& B,
                    const Vector& v) {
  const SpectralSummary s = spectral_summary(B);
  Eta0Input in;
  in.theta = theta;
  in.tau = tau;
  in.beta = beta;
  in.m = m;
  in.sigma_B = s.sigma_B;
  in.sigma_B_plus = s.sigma_B_plus;
  in.rhs = v;
  return in;
}

}  // namespace

TEST_CASE("eta0 examples") {
  SUBCASE("consistent multiplier gives zero") {
    const Eta0Solution e = solve_eta0(eta_input(1.3, 0.0, 2.0, 0.0, Matrix::Identity(2, 2),
                                                Vector::Zero(2)),
                                      Matrix::Identity(2, 2));
    CHECK(e.feasible);
    CHECK(e.value == 0.0);
  }
  SUBCASE("theta = 1, tau = 1: eta0 = kappa |v|^2 / tau^2 = 2") {
    Vector v(2);
    v << 2, 0;
    const Eta0Solution e =
        solve_eta0(eta_input(1.0, 1.0, 1.0, 0.0, Matrix::Identity(2, 2), v), Matrix::Identity(2, 2));
    CHECK(e.value == doctest::Approx(2.0).epsilon(1e-14));
    CHECK((e.dy0 - v).norm() < 1e-14);
  }
  SUBCASE("theta = 1.5, tau = 1, beta = 2: w = 0.6 v, dy = 0.8 v, eta0 = 0.6") {
    Vector v(2);
    v << 1, 0;
    const Eta0Solution e =
        solve_eta0(eta_input(1.5, 1.0, 2.0, 0.0, Matrix::Identity(2, 2), v), Matrix::Identity(2, 2));
    CHECK(e.value == doctest::Approx(0.6).epsilon(1e-14));
    CHECK((e.w0 - 0.6 * v).norm() < 1e-14);
    CHECK((e.dy0 - 0.8 * v).norm() < 1e-14);
  }
  SUBCASE("theta = 1, tau = 0, inconsistent multiplier is infeasible") {
    const Eta0Solution e = solve_eta0(
        eta_input(1.0, 0.0, 2.0, 0.0, Matrix::Identity(2, 2), Vector::Ones(2)), Matrix::Identity(2, 2));
    CHECK_FALSE(e.feasible);
    CHECK(std::isinf(e.value));
  }
  SUBCASE("tau = 0, v outside Im(B^T) is infeasible") {
    Matrix b = Matrix::Zero(2, 2);
    b(0, 0) = 1.0;
    Vector v(2);
    v << 0, 1;
    const Eta0Solution e = solve_eta0(eta_input(1.5, 0.0, 2.0, 0.0, b, v), b);
    CHECK_FALSE(e.feasible);
  }
}

TEST_CASE("eta0 matches KKT and projected-gradient oracles on random configurations") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::normal_distribution<double> nd(0.0, 1.0);
  int feasible_cases = 0, infeasible_cases = 0;
  for (int t = 0; t < 40; ++t) {
    const Eigen::Index p = 1 + t % 3, l = 1 + (t / 3) % 3;
    Matrix B(l, p);
    for (Eigen::Index i = 0; i < l; ++i)
      for (Eigen::Index j = 0; j < p; ++j) B(i, j) = nd(rng);
    const int kind = t % 5;  // 0: tau > 0, 1: tau = 0 consistent, 2: tau = 0 generic, 3: theta = 1,
                            // 4: theta = 1 and tau = 0
    const double theta = kind >= 3 ? 1.0 : 0.2 + 1.6 * u(rng);
    const double tau = kind == 0 || kind == 3 ? 0.2 + 2 * u(rng) : 0.0;
    const SpectralSummary s = spectral_summary(B);
    const double m = 0.5 * u(rng);
    const double beta = (m + 1.0) / std::max(s.sigma_B, 0.05) + 1.0;
    Vector v(p);
    for (Eigen::Index i = 0; i < p; ++i) v(i) = nd(rng);
    if (kind == 1) v = B.transpose() * (B * v);  // inside Im(B^T)
    Eta0Input in = eta_input(theta, tau, beta, m, B, v);
    const double kappa = (beta * s.sigma_B + tau - m) / 4.0;
    if (kappa <= 0) continue;
    const Eta0Solution e = solve_eta0(in, B);

    oracle::Eta0Problem pr{B, v, tau, 1.0 - 1.0 / theta, c1_of(theta, beta, s.sigma_B_plus), kappa};
    const double kkt = oracle::eta0_kkt(pr);
    const double pg = oracle::eta0_projected_gradient(pr, 5, 100 + t);
    if (std::isinf(kkt)) {
      ++infeasible_cases;
      CHECK_FALSE(e.feasible);
      CHECK(std::isinf(pg));
    } else {
      ++feasible_cases;
      REQUIRE(e.feasible);
      CHECK(e.value == doctest::Approx(kkt).epsilon(1e-6).scale(1e-12));
      CHECK(e.value == doctest::Approx(pg).epsilon(1e-6).scale(1e-12));
      // the seed satisfies the constraint
      CHECK((tau * e.dy0 + (1 - 1 / theta) * e.w0 - v).norm() <= 1e-9 * std::max(1.0, v.norm()));
    }
  }
  CHECK(feasible_cases > 10);
  CHECK(infeasible_cases > 0);
}

#include "padmm/generators.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <boost/math/tools/minima.hpp>

#include "padmm/error.hpp"

namespace padmm {

namespace {

constexpr double kMaxBetaBar = 1e8;

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  Matrix gaussian(Eigen::Index rows, Eigen::Index cols) {
    Matrix m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j) {
      for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = normal_(rng_);
    }
    return m;
  }
  Vector gaussian(Eigen::Index n) { return gaussian(n, 1).col(0); }

  double uniform(double lo, double hi) {
    return lo + (hi - lo) * std::uniform_real_distribution<double>(0.0, 1.0)(rng_);
  }
  Vector uniform(Eigen::Index n, double lo, double hi) {
    Vector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = uniform(lo, hi);
    return v;
  }

  // Haar-ish random orthogonal matrix.
  Matrix orthogonal(Eigen::Index n) {
    Eigen::HouseholderQR<Matrix> qr(gaussian(n, n));
    return qr.householderQ() * Matrix::Identity(n, n);
  }

 private:
  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

// B = U diag(s) V^T with s in [0.5, 2]; also returns the orthonormal bases of
// Im(B^T) and ker(B).
struct BFactors {
  Matrix B;
  Matrix range_t;  // p x r
  Matrix kernel;   // p x (p - r)
};

BFactors make_b(Sampler& rs, int l, int p, const std::string& mode) {
  const int full = std::min(l, p);
  int r = full;
  if (mode == "deficient") {
    r = std::max(1, full / 2);
  } else if (mode != "full") {
    throw ConfigError("unknown b_mode '" + mode + "' (expected full or deficient)");
  }
  const Matrix U = rs.orthogonal(l).leftCols(r);
  const Matrix W = rs.orthogonal(p);
  const Vector s = rs.uniform(r, 0.5, 2.0);
  BFactors out;
  out.range_t = W.leftCols(r);
  out.kernel = W.rightCols(p - r);
  out.B = U * s.asDiagonal() * out.range_t.transpose();
  return out;
}

// Q with eigenvalues in [-nu, 2] on Im(B^T) (the first one exactly -nu) and in
// [0.5, 2] on ker(B), so that g is bounded below along the kernel of the penalty.
Matrix make_q(Sampler& rs, const BFactors& bf, double nu) {
  const Eigen::Index r = bf.range_t.cols();
  Vector er = rs.uniform(r, -nu, 2.0);
  if (nu > 0.0) er(0) = -nu;
  const Vector ek = rs.uniform(bf.kernel.cols(), 0.5, 2.0);
  Matrix q = bf.range_t * er.asDiagonal() * bf.range_t.transpose() +
             bf.kernel * ek.asDiagonal() * bf.kernel.transpose();
  return 0.5 * (q + q.transpose());
}

bool positive_definite(const Matrix& h) {
  const EigenRange er = symmetric_eigen_range(0.5 * (h + h.transpose()));
  return er.min > 1e-9 * std::max(1.0, er.max);
}

// Smallest beta in {0, 1, 2, 4, ...} with H(beta) positive definite.
template <class HessianAt>
double find_beta_bar(HessianAt hessian_at, const std::string& family) {
  if (positive_definite(hessian_at(0.0))) return 0.0;
  for (double beta = 1.0; beta <= kMaxBetaBar; beta *= 2.0) {
    if (positive_definite(hessian_at(beta))) return beta;
  }
  throw ConfigError(family + ": infimum is unbounded for every beta_bar <= 1e8");
}

void require_dims(const GeneratorSpec& spec) {
  if (spec.n < 1 || spec.p < 1 || spec.l < 1) {
    throw ConfigError("generator dimensions must be >= 1");
  }
  if (!(spec.params.negative_curvature >= 0.0)) {
    throw ConfigError("negative_curvature must be >= 0");
  }
}

ProblemInstance scalar_fixture() {
  ProblemInstance inst;
  inst.A = Matrix::Ones(1, 1);
  inst.B = Matrix::Ones(1, 1);
  inst.b = Vector::Zero(1);
  inst.f = std::make_shared<QuadraticFunction>(Matrix::Ones(1, 1), Vector::Zero(1));
  inst.g = std::make_shared<QuadraticSmooth>(Matrix::Ones(1, 1), Vector::Zero(1));
  inst.beta_bar = 0.0;
  inst.L_bar_lower = 0.0;
  return inst;
}

ProblemInstance quad_quad(const GeneratorSpec& spec) {
  if (spec.n == 1 && spec.p == 1 && spec.l == 1) return scalar_fixture();
  Sampler rs(spec.seed);
  const BFactors bf = make_b(rs, spec.l, spec.p, spec.params.b_mode);
  const Matrix C = rs.gaussian(spec.p, spec.n) / std::sqrt(static_cast<double>(spec.n));
  const Vector d = 0.5 * rs.gaussian(spec.p);
  const double nu = spec.params.negative_curvature;
  const Matrix Q = make_q(rs, bf, nu);
  const Vector c = rs.gaussian(spec.p);
  const Matrix R = rs.gaussian(spec.n, spec.n) / std::sqrt(static_cast<double>(spec.n));
  Matrix P = nu * C.transpose() * C + R.transpose() * R +
             0.5 * Matrix::Identity(spec.n, spec.n);
  P = 0.5 * (P + P.transpose());
  const Vector q = rs.gaussian(spec.n);

  ProblemInstance inst;
  inst.B = bf.B;
  inst.A = bf.B * C;
  inst.b = bf.B * d;
  inst.f = std::make_shared<QuadraticFunction>(P, q);
  inst.g = std::make_shared<QuadraticSmooth>(Q, c);

  const Eigen::Index n = spec.n;
  const Eigen::Index p = spec.p;
  Matrix AB(inst.l(), n + p);
  AB << inst.A, inst.B;
  Matrix H0 = Matrix::Zero(n + p, n + p);
  H0.topLeftCorner(n, n) = P;
  H0.bottomRightCorner(p, p) = Q;
  const Matrix ABtAB = AB.transpose() * AB;
  auto hessian_at = [&](double beta) -> Matrix { return H0 + beta * ABtAB; };
  inst.beta_bar = find_beta_bar(hessian_at, "quad-quad");

  // Exact infimum of f + g + (beta_bar/2)||Ax + By - b||^2 from its KKT system.
  const Matrix H = hessian_at(inst.beta_bar);
  Vector h(n + p);
  h << q, c;
  h -= inst.beta_bar * AB.transpose() * inst.b;
  const Vector z = H.llt().solve(h);
  inst.L_bar_lower = -0.5 * h.dot(z) + 0.5 * inst.beta_bar * inst.b.squaredNorm();
  return inst;
}

ProblemInstance l0_ls(const GeneratorSpec& spec) {
  if (!(spec.params.mu > 0.0)) throw ConfigError("l0-ls: mu must be positive");
  Sampler rs(spec.seed);
  const BFactors bf = make_b(rs, spec.l, spec.p, spec.params.b_mode);
  const Matrix C = rs.gaussian(spec.p, spec.n) / std::sqrt(static_cast<double>(spec.n));
  const Vector d = 0.5 * rs.gaussian(spec.p);
  const Matrix W = rs.orthogonal(spec.p);
  const Vector e = rs.uniform(spec.p, 0.5, 2.0);
  Matrix Q = W * e.asDiagonal() * W.transpose();
  Q = 0.5 * (Q + Q.transpose());
  const Vector c = rs.gaussian(spec.p);

  ProblemInstance inst;
  inst.B = bf.B;
  inst.A = bf.B * C;
  inst.b = bf.B * d;
  inst.f = std::make_shared<L0Penalty>(spec.params.mu);
  inst.g = std::make_shared<QuadraticSmooth>(Q, c);
  inst.beta_bar = 0.0;
  // f >= 0 and the penalty is >= 0, so inf g bounds the infimum from below.
  inst.L_bar_lower = -0.5 * c.dot(Q.llt().solve(c));
  return inst;
}

ProblemInstance box_cos(const GeneratorSpec& spec) {
  const double a = spec.params.amplitude;
  const double r = spec.params.box_radius;
  if (!(a >= 0.0)) throw ConfigError("box-cos: amplitude must be >= 0");
  if (!(r > 0.0)) throw ConfigError("box-cos: box_radius must be positive");
  Sampler rs(spec.seed);
  const BFactors bf = make_b(rs, spec.l, spec.p, spec.params.b_mode);
  const Matrix C = rs.gaussian(spec.p, spec.n) / std::sqrt(static_cast<double>(spec.n));
  const Vector d = 0.5 * rs.gaussian(spec.p);

  ProblemInstance inst;
  inst.B = bf.B;
  inst.A = bf.B * C;
  inst.b = bf.B * d;
  inst.f = std::make_shared<BoxIndicator>(Vector::Constant(spec.n, -r), Vector::Constant(spec.n, r));
  inst.g = std::make_shared<CosineSmooth>(spec.p, a);
  inst.beta_bar = 0.0;
  inst.L_bar_lower = static_cast<double>(spec.p) * cosine_scalar_minimum(a);
  return inst;
}

ProblemInstance sphere_quad(const GeneratorSpec& spec) {
  Sampler rs(spec.seed);
  const BFactors bf = make_b(rs, spec.l, spec.p, spec.params.b_mode);
  const Matrix C = rs.gaussian(spec.p, spec.n) / std::sqrt(static_cast<double>(spec.n));
  const Vector d = 0.5 * rs.gaussian(spec.p);
  const Matrix Q = make_q(rs, bf, spec.params.negative_curvature);
  const Vector c = rs.gaussian(spec.p);

  ProblemInstance inst;
  inst.B = bf.B;
  inst.A = bf.B * C;
  inst.b = bf.B * d;
  inst.f = std::make_shared<SphereIndicator>();
  inst.g = std::make_shared<QuadraticSmooth>(Q, c);

  const Matrix BtB = inst.B.transpose() * inst.B;
  inst.beta_bar = find_beta_bar([&](double beta) -> Matrix { return Q + beta * BtB; },
                                "sphere-quad");

  // Minimizing over y leaves a quadratic 0.5 x^T K x + k^T x + k0 in x; on the
  // unit sphere it is at least 0.5 lambda_min(K) - ||k|| + k0.
  const double bb = inst.beta_bar;
  const Matrix H = Q + bb * BtB;
  const Eigen::LLT<Matrix> llt(H);
  const Vector h0 = c - bb * inst.B.transpose() * inst.b;
  const Matrix J = bb * inst.B.transpose() * inst.A;
  const Matrix HiJ = llt.solve(J);
  const Vector Hih0 = llt.solve(h0);
  Matrix K = bb * inst.A.transpose() * inst.A - J.transpose() * HiJ;
  K = 0.5 * (K + K.transpose());
  const Vector k = -J.transpose() * Hih0 - bb * inst.A.transpose() * inst.b;
  const double k0 = -0.5 * h0.dot(Hih0) + 0.5 * bb * inst.b.squaredNorm();
  inst.L_bar_lower = 0.5 * symmetric_eigen_range(K).min - k.norm() + k0;
  return inst;
}

}  // namespace

const std::vector<std::string>& generator_families() {
  static const std::vector<std::string> families{"quad-quad", "l0-ls", "box-cos", "sphere-quad"};
  return families;
}

double cosine_scalar_minimum(double amplitude) {
  if (amplitude <= 1.0) return amplitude;  // convex: minimum at t = 0
  // For t^2 > 4a the value exceeds phi(0) = a, so the minimizer lies in [0, 2 sqrt(a)].
  auto phi = [amplitude](double t) { return 0.5 * t * t + amplitude * std::cos(t); };
  const auto res = boost::math::tools::brent_find_minima(phi, 0.0, 2.0 * std::sqrt(amplitude), 52);
  return std::min(res.second, amplitude);
}

ProblemInstance generate_instance(const GeneratorSpec& spec) {
  require_dims(spec);
  ProblemInstance inst;
  if (spec.family == "quad-quad") {
    inst = quad_quad(spec);
  } else if (spec.family == "l0-ls") {
    inst = l0_ls(spec);
  } else if (spec.family == "box-cos") {
    inst = box_cos(spec);
  } else if (spec.family == "sphere-quad") {
    inst = sphere_quad(spec);
  } else {
    throw ConfigError("unknown generator family '" + spec.family +
                      "' (expected quad-quad, l0-ls, box-cos or sphere-quad)");
  }
  inst.check_consistency();
  const ValidationReport rep = validate_assumptions(inst);
  if (!rep.all_pass()) {
    throw AssumptionError(spec.family + ": generated instance failed validation: " + rep.summary());
  }
  return inst;
}

}  // namespace padmm

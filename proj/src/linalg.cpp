#include "padmm/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "padmm/error.hpp"

namespace padmm {

ReducedSvd reduced_svd(const Matrix& m) {
  if (!m.allFinite()) throw ContractError("reduced_svd: matrix has non-finite entries");
  ReducedSvd out;
  if (m.size() == 0) {
    out.left.resize(m.rows(), 0);
    out.right.resize(m.cols(), 0);
    return out;
  }
  Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector& s = svd.singularValues();
  const double cutoff = s.size() > 0 ? kRankTolerance * s(0) : 0.0;
  Eigen::Index r = 0;
  while (r < s.size() && s(r) > cutoff && s(r) > 0.0) ++r;
  out.values = s.head(r);
  out.left = svd.matrixU().leftCols(r);
  out.right = svd.matrixV().leftCols(r);
  return out;
}

SpectralSummary spectral_summary(const Matrix& b) {
  const ReducedSvd svd = reduced_svd(b);
  if (svd.rank() == 0) throw AssumptionError("B must be nonzero");
  SpectralSummary out;
  out.rank = svd.rank();
  const double smax = svd.values(0);
  const double smin = svd.values(svd.rank() - 1);
  out.norm_BtB = smax * smax;
  out.sigma_B_plus = smin * smin;
  out.sigma_B = (svd.rank() == b.cols()) ? out.sigma_B_plus : 0.0;
  return out;
}

RangeProjector::RangeProjector(const Matrix& s) : basis_(reduced_svd(s).left) {}

Vector RangeProjector::coordinates(const Vector& u) const {
  if (u.size() != basis_.rows()) {
    throw ContractError("projection: vector has dimension " + std::to_string(u.size()) +
                        ", expected " + std::to_string(basis_.rows()));
  }
  return basis_.transpose() * u;
}

Vector RangeProjector::apply(const Vector& u) const { return basis_ * coordinates(u); }

Vector project_onto_range(const Matrix& s, const Vector& u) {
  if (u.size() != s.rows()) throw ContractError("project_onto_range: dimension mismatch");
  return RangeProjector(s).apply(u);
}

double range_inclusion_gap(const Matrix& b_mat, const Matrix& a_mat, const Vector& b) {
  if (a_mat.rows() != b_mat.rows() || b.size() != b_mat.rows()) {
    throw ContractError("range_inclusion_gap: row dimensions of A, B, b differ");
  }
  const RangeProjector proj(b_mat);
  auto gap = [&](const Vector& v) {
    return (v - proj.apply(v)).norm() / std::max(1.0, v.norm());
  };
  double worst = gap(b);
  for (Eigen::Index i = 0; i < a_mat.cols(); ++i) worst = std::max(worst, gap(a_mat.col(i)));
  return worst;
}

EigenRange symmetric_eigen_range(const Matrix& s) {
  if (s.rows() != s.cols()) throw ContractError("symmetric_eigen_range: matrix not square");
  if (s.size() == 0) return {};
  Eigen::SelfAdjointEigenSolver<Matrix> es(s, Eigen::EigenvaluesOnly);
  const Vector& ev = es.eigenvalues();
  return {ev(0), ev(ev.size() - 1)};
}

}  // namespace padmm

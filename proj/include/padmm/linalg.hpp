#pragma once

// Dense linear algebra helpers: reduced SVD, spectral constants of the
// coupling matrix B, and Euclidean projections onto column spaces.

#include <Eigen/Dense>

namespace padmm {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Singular values at or below this fraction of the largest one count as zero.
inline constexpr double kRankTolerance = 1e-12;

/// Thin SVD restricted to the strictly positive singular values:
/// M = left * diag(values) * right^T, with orthonormal columns in left/right.
struct ReducedSvd {
  Matrix left;    // rows(M) x rank
  Vector values;  // rank, descending, strictly positive
  Matrix right;   // cols(M) x rank

  Eigen::Index rank() const { return values.size(); }
};

ReducedSvd reduced_svd(const Matrix& m);

/// Eigenvalue summary of B^T B.
struct SpectralSummary {
  double sigma_B = 0.0;       // smallest eigenvalue of B^T B
  double sigma_B_plus = 0.0;  // smallest positive eigenvalue of B^T B
  double norm_BtB = 0.0;      // largest eigenvalue (operator 2-norm)
  Eigen::Index rank = 0;
};

/// Throws AssumptionError when B is the zero matrix.
SpectralSummary spectral_summary(const Matrix& b);

/// Orthogonal projector onto Im(S), built once from an orthonormal basis.
class RangeProjector {
 public:
  explicit RangeProjector(const Matrix& s);

  Vector apply(const Vector& u) const;
  // Coordinates of the projection in the orthonormal basis; ||coords|| = ||P u||.
  Vector coordinates(const Vector& u) const;

  const Matrix& basis() const { return basis_; }
  Eigen::Index ambient_dim() const { return basis_.rows(); }
  Eigen::Index rank() const { return basis_.cols(); }

 private:
  Matrix basis_;
};

Vector project_onto_range(const Matrix& s, const Vector& u);

/// Largest relative distance of b and of every column of A from Im(B).
double range_inclusion_gap(const Matrix& b_mat, const Matrix& a_mat, const Vector& b);

/// Extreme eigenvalues of a symmetric matrix.
struct EigenRange {
  double min = 0.0;
  double max = 0.0;
};
EigenRange symmetric_eigen_range(const Matrix& s);

}  // namespace padmm

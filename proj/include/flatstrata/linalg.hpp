#pragma once

#include <Eigen/Dense>

namespace flatstrata {

// Singular-value based rank decision with an absolute threshold.
struct RankInfo {
  int rank = 0;
  // Some singular value lies within a factor kIllConditionedFactor of the
  // threshold, so the verdict is fragile.
  bool ill_conditioned = false;
  Eigen::VectorXd singular_values;
  // Smallest singular value above the threshold (infinity when rank == 0).
  double smallest_nonzero = 0.0;
};

RankInfo numeric_rank(const Eigen::MatrixXd &m, double tol);

// Orthonormal basis of ker m (columns). A matrix with zero rows has the whole
// domain as kernel.
Eigen::MatrixXd null_space(const Eigen::MatrixXd &m, double tol);

// Orthonormal basis of im m (columns).
Eigen::MatrixXd range_basis(const Eigen::MatrixXd &m, double tol);

// Sum of log singular values above tol, together with their count.
struct LogSingularProduct {
  double log_value = 0.0;
  int rank = 0;
};
LogSingularProduct log_singular_product(const Eigen::MatrixXd &m, double tol);

} // namespace flatstrata

#pragma once

#include <Eigen/Core>

namespace fkm {

struct LeastSquaresResult {
  Eigen::VectorXd x;
  double residual = 0.0;   // relative_misfit(A x - b, b)
  double condition = 0.0;  // sigma_max / sigma_min of A
};

/// Solves A^T A x = A^T b with a column-pivoted QR of the normal matrix.
LeastSquaresResult solve_least_squares(const Eigen::MatrixXd& a, const Eigen::VectorXd& b);

/// max|diff| / max(1, max|ref|): relative where the reference is large,
/// absolute where it vanishes (flat entries).
double relative_misfit(const Eigen::VectorXd& diff, const Eigen::VectorXd& ref);

/// Root-mean-square entry of a column.
double column_rms(const Eigen::MatrixXd& a, Eigen::Index col);

}  // namespace fkm

#pragma once

#include <Eigen/Dense>

namespace pipelife {

struct LeastSquaresResult {
  Eigen::VectorXd theta;
  Eigen::Index rank = 0;
  bool rank_deficient = false;
};

/// Pivots below this fraction of the largest one count as zero.
inline constexpr double kRankTolerance = 1e-10;

/// min ||design * theta - target||_2 via a complete orthogonal decomposition.
/// Rank-deficient designs get the minimum-norm solution and are flagged.
[[nodiscard]] LeastSquaresResult solve_least_squares(const Eigen::MatrixXd& design,
                                                     const Eigen::VectorXd& target,
                                                     double rank_tolerance = kRankTolerance);

}  // namespace pipelife

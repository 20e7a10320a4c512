#include "pipelife/least_squares.hpp"

#include "pipelife/error.hpp"

namespace pipelife {

LeastSquaresResult solve_least_squares(const Eigen::MatrixXd& design, const Eigen::VectorXd& target,
                                       double rank_tolerance) {
  if (design.rows() != target.size()) {
    throw Error(ErrorCode::DimensionMismatch, "design rows and target length differ");
  }
  LeastSquaresResult r;
  if (design.cols() == 0) {
    r.theta.resize(0);
    return r;
  }
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod;
  cod.setThreshold(rank_tolerance);
  cod.compute(design);
  r.theta = cod.solve(target);
  r.rank = cod.rank();
  r.rank_deficient = r.rank < design.cols();
  return r;
}

}  // namespace pipelife

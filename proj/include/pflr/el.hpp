#ifndef PFLR_EL_HPP
#define PFLR_EL_HPP

#include <Eigen/Dense>

#include "pflr/model.hpp"

namespace pflr {

/// Outcome of the empirical-likelihood evaluation at one beta.
struct ELEvaluation {
  Eigen::VectorXd lambda;
  Eigen::VectorXd pi;
  double statistic;  // -2 log R_n; +infinity on hull failure
  bool converged;
  int iterations;
  bool hull_ok;
};

/// Estimating-equation scores W_i(beta) = Z_i (Y_i - Z_i^T beta - a_i)
/// with a = A (Y - Z beta), A = B (B^T B)^{-1} B^T, computed through one
/// shared solve. Row i of the result is W_i(beta)^T.
Eigen::MatrixXd el_scores(const Dataset& data, const BSplineBasis& basis,
                          const Eigen::VectorXd& beta);

struct LambdaSolution {
  Eigen::VectorXd lambda;
  bool converged;
  int iterations;
  bool hull_ok;
};

/// Solves (1/n) sum_i W_i / (1 + lambda^T W_i) = 0 by minimizing the convex
/// dual -sum_i log*(1 + lambda^T W_i), where log* is the logarithm continued
/// quadratically below 1/n (Owen's pseudo-logarithm). Damped Newton with a
/// halving line search; converged when the gradient infinity-norm drops to
/// 1e-10 within 50 iterations. hull_ok is false when any final
/// 1 + lambda^T W_i <= 1/n, i.e. the origin is outside or on the boundary
/// of the convex hull of the scores.
LambdaSolution solve_lambda(const Eigen::MatrixXd& W);

/// -2 log R_n from a score matrix: 2 sum_i log(1 + lambda^T W_i) with
/// pi_i = 1 / (n (1 + lambda^T W_i)); +infinity on hull failure.
ELEvaluation neg2_log_el(const Eigen::MatrixXd& W);

/// Composition: scores at beta, then the EL statistic.
ELEvaluation el_statistic(const Dataset& data, const BSplineBasis& basis,
                          const Eigen::VectorXd& beta);

}  // namespace pflr

#endif  // PFLR_EL_HPP

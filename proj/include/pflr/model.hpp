#ifndef PFLR_MODEL_HPP
#define PFLR_MODEL_HPP

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "pflr/bspline.hpp"
#include "pflr/numerics.hpp"

namespace pflr {

/// Simulation ground truth attached to generated datasets.
struct Truth {
  Eigen::VectorXd beta;
  Eigen::VectorXd alpha_on_grid;
};

/// Observations (X_i, Z_i, Y_i), i = 1..n, for the model
///   Y = Z^T beta + integral X(t) alpha(t) dt + eps.
struct Dataset {
  Dataset(Eigen::MatrixXd Z_, Eigen::VectorXd Y_, FunctionalSample X_,
          std::optional<Truth> truth_ = std::nullopt);

  Eigen::Index n() const { return Y.size(); }
  Eigen::Index p() const { return Z.cols(); }

  Eigen::MatrixXd Z;
  Eigen::VectorXd Y;
  FunctionalSample X;
  std::optional<Truth> truth;
};

/// Profile least-squares fit. Sigma_hat = (1/n) Z^T (I-A) Z estimates
/// Var(Z_1 - E(Z_1|X_1)); Sigma1_hat = (1/n) sum Z_i Z_i^T estimates
/// E(Z_1 Z_1^T).
struct PFLRFit {
  Eigen::VectorXd beta_hat;
  Eigen::VectorXd b_hat;
  BSplineBasis basis;
  double sigma2_hat;
  Eigen::MatrixXd Sigma_hat;
  Eigen::MatrixXd Sigma1_hat;
  Eigen::VectorXd residuals;

  Eigen::Index n() const { return residuals.size(); }

  /// Estimated slope function alpha_hat(t) = sum b_hat_s B_s(t).
  double alpha_at(double t) const { return eval_spline(b_hat, basis, t); }
};

/// Fits beta_hat = (Z^T(I-A)Z)^{-1} Z^T(I-A)Y and
/// b_hat = (B^TB)^{-1} B^T (Y - Z beta_hat) with A = B(B^TB)^{-1}B^T.
/// Requires k_n < n - p; singular B^TB or Z^T(I-A)Z raise
/// SingularMatrixError naming the matrix.
PFLRFit fit(const Dataset& data, const BSplineBasis& basis);

/// Full n-by-n linear smoother matrix H with Yhat = H Y;
/// trace(H) = k_n + p for full-rank inputs.
Eigen::MatrixXd hat_matrix(const Eigen::MatrixXd& Z, const Eigen::MatrixXd& B);

/// Leave-one-out CV score (1/n) sum ((Y_i - Yhat_i) / (1 - H_ii))^2 using
/// the linear-smoother shortcut. Points with leverage H_ii >= 1 - 1e-8 are
/// scored by an explicit deletion refit. Returns +infinity for saturated
/// (k_n + p >= n) or numerically singular candidates.
double loocv_score(const Dataset& data, const BSplineBasis& basis);

/// Default knot-count candidates 1..min(15, floor(n/4) - degree - 1).
std::vector<int> default_knot_candidates(Eigen::Index n, int degree);

/// Candidate minimizing loocv_score, ties broken toward fewer knots.
/// Throws ConfigError when the candidate set is empty or every candidate
/// is infeasible.
int select_knots(const Dataset& data, int degree,
                 const std::vector<int>& candidates);

}  // namespace pflr

#endif  // PFLR_MODEL_HPP

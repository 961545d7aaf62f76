#ifndef PFLR_NUMERICS_HPP
#define PFLR_NUMERICS_HPP

#include <Eigen/Dense>
#include <string>

#include "pflr/errors.hpp"

namespace pflr {

/// Integration grid on [0,1]: strictly increasing points with first point 0
/// and last point 1, at least two points.
class Grid {
public:
  explicit Grid(Eigen::VectorXd points);

  /// m equally spaced points from 0 to 1.
  static Grid uniform(int m);

  const Eigen::VectorXd& points() const { return points_; }
  Eigen::Index size() const { return points_.size(); }
  double operator[](Eigen::Index i) const { return points_[i]; }

  /// Composite trapezoid weights w with sum(w) = 1.
  const Eigen::VectorXd& trapezoid_weights() const { return weights_; }

private:
  Eigen::VectorXd points_;
  Eigen::VectorXd weights_;
};

/// Composite trapezoid approximation of the L2([0,1]) inner product
/// integral of f(t) g(t) dt from the values of f and g on the grid.
double trapezoid_inner_product(const Eigen::VectorXd& f,
                               const Eigen::VectorXd& g, const Grid& grid);

/// Throws DimensionError unless S is square and symmetric to within a
/// 1e-12 relative tolerance.
void require_symmetric(const Eigen::MatrixXd& S, const std::string& name);

struct SymEig {
  Eigen::VectorXd values;   // descending
  Eigen::MatrixXd vectors;  // columns, orthonormal, matching values order
};

/// Eigendecomposition of a symmetric matrix, eigenvalues descending.
SymEig sym_eig(const Eigen::MatrixXd& S);

/// Spectral factorization of a symmetric positive definite matrix, reusable
/// across solves. Construction throws SingularMatrixError naming `name`
/// when the smallest eigenvalue is at most 1e-10 times the largest.
class SpdFactor {
public:
  SpdFactor(const Eigen::MatrixXd& S, const std::string& name);

  Eigen::MatrixXd solve(const Eigen::MatrixXd& rhs) const;

  /// C with C C^T = S^{-1}; maps rhs -> rhs * C so row norms give
  /// quadratic forms rhs_i^T S^{-1} rhs_i.
  Eigen::MatrixXd inverse_half() const;

private:
  SymEig eig_;
};

/// Solves S T = rhs for symmetric positive definite S. Throws
/// SingularMatrixError naming `name` when the smallest eigenvalue is at
/// most 1e-10 times the largest.
Eigen::MatrixXd spd_solve(const Eigen::MatrixXd& S, const Eigen::MatrixXd& rhs,
                          const std::string& name);

/// Symmetric PSD square root. Eigenvalues in [-1e-10 * max, 0) are clamped
/// to zero; anything more negative raises NumericalError.
Eigen::MatrixXd sqrt_spd(const Eigen::MatrixXd& S);

/// Regularized lower incomplete gamma P(a, x), a > 0, x >= 0.
double regularized_gamma_p(double a, double x);

/// Chi-square CDF with df degrees of freedom.
double chi2_cdf(double x, int df);

/// Chi-square quantile: the x with P(df/2, x/2) = prob, solved by a
/// bracketed Newton/bisection iteration to 1e-10 absolute accuracy.
double chi2_quantile(double prob, int df);

}  // namespace pflr

#endif  // PFLR_NUMERICS_HPP

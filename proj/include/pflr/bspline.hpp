#ifndef PFLR_BSPLINE_HPP
#define PFLR_BSPLINE_HPP

#include <Eigen/Dense>

#include "pflr/numerics.hpp"

namespace pflr {

/// B-spline basis of a given degree over equally spaced interior knots
/// in [0,1], with (degree+1)-fold clamping at both ends. The spanned
/// spline space has dimension interior_knots + degree + 1.
class BSplineBasis {
public:
  BSplineBasis(int degree, int interior_knots);

  int degree() const { return degree_; }
  int interior_knot_count() const { return interior_knots_; }
  int dimension() const { return dimension_; }
  const Eigen::VectorXd& knot_vector() const { return knots_; }

  /// All basis function values at t in [0,1] (Cox-de Boor recursion).
  /// At t = 1 the last basis function evaluates to 1.
  Eigen::VectorXd eval(double t) const;

  /// Basis values tabulated on a grid, row i = eval(grid[i]).
  Eigen::MatrixXd eval_on_grid(const Grid& grid) const;

private:
  int degree_;
  int interior_knots_;
  int dimension_;
  Eigen::VectorXd knots_;
};

/// n curves observed on a shared grid; row i holds X_i on the grid points.
struct FunctionalSample {
  FunctionalSample(Grid g, Eigen::MatrixXd c);

  Eigen::Index n() const { return curves.rows(); }

  Grid grid;
  Eigen::MatrixXd curves;
};

/// Functional design matrix with entries <X_i, B_j> computed by the
/// trapezoid rule on the sample grid.
Eigen::MatrixXd functional_design(const BSplineBasis& basis,
                                  const FunctionalSample& sample);

/// Value of the spline with the given coefficients at t.
double eval_spline(const Eigen::VectorXd& coefficients,
                   const BSplineBasis& basis, double t);

}  // namespace pflr

#endif  // PFLR_BSPLINE_HPP

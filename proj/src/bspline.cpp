#include "pflr/bspline.hpp"

#include <algorithm>
#include <cmath>

#include "pflr/errors.hpp"

namespace pflr {

BSplineBasis::BSplineBasis(int degree, int interior_knots)
    : degree_(degree),
      interior_knots_(interior_knots),
      dimension_(interior_knots + degree + 1) {
  if (degree < 0) throw DomainError("BSplineBasis: degree must be >= 0");
  if (interior_knots < 0)
    throw DomainError("BSplineBasis: interior knot count must be >= 0");

  // (degree+1)-fold clamp at 0 and 1, equally spaced interior knots.
  const int total = dimension_ + degree + 1;
  knots_.resize(total);
  for (int i = 0; i <= degree; ++i) knots_[i] = 0.0;
  for (int j = 1; j <= interior_knots; ++j)
    knots_[degree + j] = static_cast<double>(j) / (interior_knots + 1);
  for (int i = 0; i <= degree; ++i) knots_[total - 1 - i] = 1.0;
}

Eigen::VectorXd BSplineBasis::eval(double t) const {
  if (!(t >= 0.0 && t <= 1.0))
    throw DomainError("BSplineBasis::eval: t must lie in [0,1]");

  const int k = degree_;
  // Knot span [knots_[mu], knots_[mu+1]) containing t; t = 1 falls in the
  // last nontrivial span so the basis is defined on the closed interval.
  int mu;
  if (t >= 1.0) {
    mu = k + interior_knots_;
  } else {
    const double* lo = knots_.data() + k;
    const double* hi = knots_.data() + k + interior_knots_ + 1;
    mu = static_cast<int>(std::upper_bound(lo, hi, t) - knots_.data()) - 1;
  }

  // Cox-de Boor triangle for the k+1 basis functions alive on this span.
  Eigen::VectorXd vals = Eigen::VectorXd::Zero(dimension_);
  Eigen::VectorXd N(k + 1), left(k + 1), right(k + 1);
  N[0] = 1.0;
  for (int j = 1; j <= k; ++j) {
    left[j] = t - knots_[mu + 1 - j];
    right[j] = knots_[mu + j] - t;
    double saved = 0.0;
    for (int r = 0; r < j; ++r) {
      const double tmp = N[r] / (right[r + 1] + left[j - r]);
      N[r] = saved + right[r + 1] * tmp;
      saved = left[j - r] * tmp;
    }
    N[j] = saved;
  }
  for (int i = 0; i <= k; ++i) vals[mu - k + i] = N[i];
  return vals;
}

Eigen::MatrixXd BSplineBasis::eval_on_grid(const Grid& grid) const {
  Eigen::MatrixXd phi(grid.size(), dimension_);
  for (Eigen::Index i = 0; i < grid.size(); ++i)
    phi.row(i) = eval(grid[i]).transpose();
  return phi;
}

FunctionalSample::FunctionalSample(Grid g, Eigen::MatrixXd c)
    : grid(std::move(g)), curves(std::move(c)) {
  if (curves.cols() != grid.size())
    throw DimensionError(
        "FunctionalSample: curve column count must equal grid length");
  if (!curves.allFinite())
    throw DataError("FunctionalSample: curves contain non-finite values");
}

Eigen::MatrixXd functional_design(const BSplineBasis& basis,
                                  const FunctionalSample& sample) {
  // <X_i, B_j> by trapezoid = curves * diag(w) * phi, all rows at once.
  const Eigen::MatrixXd phi = basis.eval_on_grid(sample.grid);
  return sample.curves *
         (sample.grid.trapezoid_weights().asDiagonal() * phi);
}

double eval_spline(const Eigen::VectorXd& coefficients,
                   const BSplineBasis& basis, double t) {
  if (coefficients.size() != basis.dimension())
    throw DimensionError("eval_spline: coefficient length must equal basis dimension");
  return coefficients.dot(basis.eval(t));
}

}  // namespace pflr

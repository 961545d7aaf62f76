#include "pflr/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace pflr {

Grid::Grid(Eigen::VectorXd points) : points_(std::move(points)) {
  const Eigen::Index m = points_.size();
  if (m < 2) throw DomainError("grid needs at least two points");
  if (points_[0] != 0.0 || points_[m - 1] != 1.0)
    throw DomainError("grid must start at 0 and end at 1");
  for (Eigen::Index i = 1; i < m; ++i)
    if (!(points_[i] > points_[i - 1]))
      throw DomainError("grid points must be strictly increasing");

  weights_.resize(m);
  weights_[0] = 0.5 * (points_[1] - points_[0]);
  for (Eigen::Index i = 1; i + 1 < m; ++i)
    weights_[i] = 0.5 * (points_[i + 1] - points_[i - 1]);
  weights_[m - 1] = 0.5 * (points_[m - 1] - points_[m - 2]);
}

Grid Grid::uniform(int m) {
  if (m < 2) throw DomainError("grid needs at least two points");
  Eigen::VectorXd p(m);
  for (int i = 0; i < m; ++i) p[i] = static_cast<double>(i) / (m - 1);
  p[m - 1] = 1.0;
  return Grid(std::move(p));
}

double trapezoid_inner_product(const Eigen::VectorXd& f,
                               const Eigen::VectorXd& g, const Grid& grid) {
  if (f.size() != grid.size() || g.size() != grid.size())
    throw DimensionError("trapezoid_inner_product: f, g and grid lengths differ");
  return (f.array() * g.array() * grid.trapezoid_weights().array()).sum();
}

void require_symmetric(const Eigen::MatrixXd& S, const std::string& name) {
  if (S.rows() != S.cols())
    throw DimensionError(name + " is not square");
  const double scale = std::max(1.0, S.cwiseAbs().maxCoeff());
  const double asym = (S - S.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12 * scale)
    throw DimensionError(name + " is not symmetric");
}

SymEig sym_eig(const Eigen::MatrixXd& S) {
  require_symmetric(S, "sym_eig input");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S);
  if (es.info() != Eigen::Success)
    throw NumericalError("sym_eig: eigendecomposition failed");
  // Eigen returns ascending order; flip to descending.
  const Eigen::Index n = S.rows();
  SymEig out;
  out.values = es.eigenvalues().reverse();
  out.vectors.resize(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    out.vectors.col(j) = es.eigenvectors().col(n - 1 - j);
  return out;
}

SpdFactor::SpdFactor(const Eigen::MatrixXd& S, const std::string& name)
    : eig_(sym_eig(S)) {
  const double lmax = eig_.values[0];
  const double lmin = eig_.values[eig_.values.size() - 1];
  if (lmax <= 0.0 || lmin <= 1e-10 * lmax) throw SingularMatrixError(name);
}

Eigen::MatrixXd SpdFactor::solve(const Eigen::MatrixXd& rhs) const {
  if (rhs.rows() != eig_.values.size())
    throw DimensionError("SpdFactor::solve: rhs row count mismatch");
  return eig_.vectors * (eig_.values.cwiseInverse().asDiagonal() *
                         (eig_.vectors.transpose() * rhs));
}

Eigen::MatrixXd SpdFactor::inverse_half() const {
  return eig_.vectors *
         eig_.values.cwiseSqrt().cwiseInverse().asDiagonal().toDenseMatrix();
}

Eigen::MatrixXd spd_solve(const Eigen::MatrixXd& S, const Eigen::MatrixXd& rhs,
                          const std::string& name) {
  if (S.rows() != rhs.rows())
    throw DimensionError("spd_solve: rhs row count does not match " + name);
  return SpdFactor(S, name).solve(rhs);
}

Eigen::MatrixXd sqrt_spd(const Eigen::MatrixXd& S) {
  const SymEig eig = sym_eig(S);
  const double lmax = std::max(eig.values[0], 0.0);
  Eigen::VectorXd lam = eig.values;
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    if (lam[i] < -1e-10 * std::max(lmax, 1e-300))
      throw NumericalError("sqrt_spd: input has a materially negative eigenvalue");
    lam[i] = std::sqrt(std::max(lam[i], 0.0));
  }
  Eigen::MatrixXd R =
      eig.vectors * lam.asDiagonal() * eig.vectors.transpose();
  return 0.5 * (R + R.transpose());  // kill round-off asymmetry
}

// ---------------------------------------------------------------------------
// Regularized incomplete gamma, series + continued fraction.
// Series for x < a+1, Lentz continued fraction otherwise.
// ---------------------------------------------------------------------------

static double gamma_p_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double term = sum;
  for (int it = 0; it < 1000; ++it) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * 1e-16) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

static double gamma_q_contfrac(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 1000; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-16) break;
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double regularized_gamma_p(double a, double x) {
  if (!(a > 0.0) || x < 0.0)
    throw DomainError("regularized_gamma_p: need a > 0 and x >= 0");
  if (x == 0.0) return 0.0;
  if (x < a + 1.0) return gamma_p_series(a, x);
  return 1.0 - gamma_q_contfrac(a, x);
}

double chi2_cdf(double x, int df) {
  if (df < 1) throw DomainError("chi2_cdf: df must be a positive integer");
  if (x <= 0.0) return 0.0;
  return regularized_gamma_p(0.5 * df, 0.5 * x);
}

double chi2_quantile(double prob, int df) {
  if (!(prob > 0.0 && prob < 1.0))
    throw DomainError("chi2_quantile: prob must lie in (0,1)");
  if (df < 1) throw DomainError("chi2_quantile: df must be a positive integer");

  // Bracket the root, then safeguarded Newton on F(x) - prob.
  double lo = 0.0;
  double hi = df + 10.0;
  while (chi2_cdf(hi, df) < prob) hi *= 2.0;

  double x = df * std::pow(1.0 - 2.0 / (9.0 * df), 3);  // Wilson-Hilferty start
  if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);
  const double a = 0.5 * df;
  const double log_norm = -a * std::numbers::ln2 - std::lgamma(a);
  for (int it = 0; it < 200; ++it) {
    const double fx = chi2_cdf(x, df) - prob;
    if (fx > 0.0)
      hi = x;
    else
      lo = x;
    if (hi - lo < 1e-12) break;
    const double pdf = std::exp(log_norm + (a - 1.0) * std::log(x) - 0.5 * x);
    double next = x - fx / pdf;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::fabs(next - x) < 1e-11 && std::fabs(fx) < 1e-14) {
      x = next;
      break;
    }
    x = next;
  }
  return x;
}

}  // namespace pflr

#include "pflr/el.hpp"

#include <cmath>
#include <limits>

#include "pflr/errors.hpp"

namespace pflr {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Owen's pseudo-logarithm: log(z) for z >= eps, quadratic continuation
// matching value and first two derivatives below. Keeps the dual smooth
// and globally convex.
struct PseudoLog {
  double eps;

  double value(double z) const {
    if (z >= eps) return std::log(z);
    const double r = z / eps;
    return std::log(eps) - 1.5 + 2.0 * r - 0.5 * r * r;
  }
  double deriv(double z) const {
    if (z >= eps) return 1.0 / z;
    return (2.0 - z / eps) / eps;
  }
  double deriv2(double z) const {
    if (z >= eps) return -1.0 / (z * z);
    return -1.0 / (eps * eps);
  }
};

}  // namespace

Eigen::MatrixXd el_scores(const Dataset& data, const BSplineBasis& basis,
                          const Eigen::VectorXd& beta) {
  if (beta.size() != data.p())
    throw DimensionError("el_scores: beta length must equal p");
  const Eigen::MatrixXd B = functional_design(basis, data.X);
  const SpdFactor Fg(B.transpose() * B, "BtB");
  const Eigen::VectorXd r = data.Y - data.Z * beta;
  const Eigen::VectorXd e = r - B * Fg.solve(B.transpose() * r);
  return e.asDiagonal() * data.Z;
}

LambdaSolution solve_lambda(const Eigen::MatrixXd& W) {
  const Eigen::Index n = W.rows();
  const Eigen::Index p = W.cols();
  if (n < p + 1)
    throw ConfigError("solve_lambda: need at least p + 1 score rows");
  if (!W.allFinite())
    throw DataError("solve_lambda: scores contain non-finite values");

  const PseudoLog plog{1.0 / static_cast<double>(n)};
  const double inv_n = 1.0 / static_cast<double>(n);

  const auto dual_value = [&](const Eigen::VectorXd& lam) {
    const Eigen::VectorXd z = (W * lam).array() + 1.0;
    double f = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) f -= plog.value(z[i]);
    return f * inv_n;
  };

  Eigen::VectorXd lambda = Eigen::VectorXd::Zero(p);
  bool converged = false;
  int iterations = 0;

  for (int it = 0; it < 50; ++it) {
    const Eigen::VectorXd z = (W * lambda).array() + 1.0;

    // g = (1/n) sum_i W_i log*'(z_i); equals the estimating function
    // (1/n) sum W_i / (1 + lambda^T W_i) at interior points.
    Eigen::VectorXd dvals(n), hvals(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      dvals[i] = plog.deriv(z[i]);
      hvals[i] = -plog.deriv2(z[i]);
    }
    const Eigen::VectorXd g = inv_n * (W.transpose() * dvals);
    if (g.lpNorm<Eigen::Infinity>() <= 1e-13) {
      converged = true;
      break;
    }

    const Eigen::MatrixXd H =
        inv_n * (W.transpose() * hvals.asDiagonal() * W);
    // Newton direction; fall back to a spectral pseudo-inverse when the
    // score matrix is rank deficient.
    Eigen::VectorXd dir;
    const SymEig eig = sym_eig(0.5 * (H + H.transpose()));
    const double lmax = eig.values[0];
    if (!(lmax > 0.0)) {
      dir = g;  // flat dual, gradient direction
    } else {
      Eigen::VectorXd inv = eig.values;
      for (Eigen::Index i = 0; i < inv.size(); ++i)
        inv[i] = eig.values[i] > 1e-12 * lmax ? 1.0 / eig.values[i] : 0.0;
      dir = eig.vectors * (inv.asDiagonal() * (eig.vectors.transpose() * g));
    }

    const double f0 = dual_value(lambda);
    const double slope = g.dot(dir);  // descent rate of the dual along dir
    double step = 1.0;
    Eigen::VectorXd next = lambda + dir;
    for (int ls = 0; ls < 60; ++ls) {
      if (dual_value(next) <= f0 - 1e-4 * step * slope) break;
      step *= 0.5;
      next = lambda + step * dir;
    }
    lambda = next;
    iterations = it + 1;
  }

  const Eigen::VectorXd z = (W * lambda).array() + 1.0;
  Eigen::VectorXd dvals(n);
  for (Eigen::Index i = 0; i < n; ++i) dvals[i] = plog.deriv(z[i]);
  const double gnorm =
      (inv_n * (W.transpose() * dvals)).lpNorm<Eigen::Infinity>();

  LambdaSolution out;
  out.lambda = lambda;
  out.converged = converged || gnorm <= 1e-10;
  out.iterations = iterations;
  out.hull_ok = (z.array() > plog.eps).all();
  return out;
}

ELEvaluation neg2_log_el(const Eigen::MatrixXd& W) {
  const LambdaSolution sol = solve_lambda(W);
  const Eigen::Index n = W.rows();
  const Eigen::VectorXd z = (W * sol.lambda).array() + 1.0;

  ELEvaluation out;
  out.lambda = sol.lambda;
  out.converged = sol.converged;
  out.iterations = sol.iterations;
  out.hull_ok = sol.hull_ok;
  out.pi = (static_cast<double>(n) * z.array()).inverse();
  if (!sol.hull_ok) {
    out.statistic = kInf;
    return out;
  }
  out.statistic = 2.0 * z.array().log().sum();
  return out;
}

ELEvaluation el_statistic(const Dataset& data, const BSplineBasis& basis,
                          const Eigen::VectorXd& beta) {
  return neg2_log_el(el_scores(data, basis, beta));
}

}  // namespace pflr

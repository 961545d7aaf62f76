#include "pflr/simgen.hpp"

#include <cmath>
#include <numbers>

#include "pflr/errors.hpp"

namespace pflr {

namespace {

constexpr double kSkewShape = 5.0;

// phi_1 = 1, phi_j = sqrt(2) cos((j-1) pi t) for j >= 2; rows are basis
// functions evaluated on the grid.
Eigen::MatrixXd fourier_matrix(int terms, const Grid& grid) {
  const Eigen::Index m = grid.size();
  Eigen::MatrixXd phi(terms, m);
  phi.row(0).setOnes();
  for (int j = 2; j <= terms; ++j)
    for (Eigen::Index s = 0; s < m; ++s)
      phi(j - 1, s) =
          std::numbers::sqrt2 * std::cos((j - 1) * std::numbers::pi * grid[s]);
  return phi;
}

// Slope function shared by Models 1 and 3:
// alpha = sqrt(2)/2 + sum_{j>=2} 4 j^{-2} phi_j.
Eigen::VectorXd alpha_model1(int terms, const Eigen::MatrixXd& phi) {
  Eigen::VectorXd coef(terms);
  coef[0] = std::numbers::sqrt2 / 2.0;
  for (int j = 2; j <= terms; ++j) coef[j - 1] = 4.0 / (j * j);
  return phi.transpose() * coef;
}

Eigen::VectorXd alpha_model2(const Grid& grid) {
  Eigen::VectorXd a(grid.size());
  for (Eigen::Index s = 0; s < grid.size(); ++s) {
    const double t = grid[s];
    a[s] = 2.0 * std::sin(0.5 * std::numbers::pi * t) +
           4.0 * std::sin(1.5 * std::numbers::pi * t) +
           5.0 * std::sin(2.5 * std::numbers::pi * t);
  }
  return a;
}

// alpha_k = sum_j b_kj phi_j with b_11 = 1, b_21 = -0.5, b_1j = 2 j^{-2},
// b_2j = 3 j^{-2} for j >= 2.
std::pair<Eigen::VectorXd, Eigen::VectorXd> model3_covariate_slopes(
    int terms, const Eigen::MatrixXd& phi) {
  Eigen::VectorXd b1(terms), b2(terms);
  b1[0] = 1.0;
  b2[0] = -0.5;
  for (int j = 2; j <= terms; ++j) {
    b1[j - 1] = 2.0 / (j * j);
    b2[j - 1] = 3.0 / (j * j);
  }
  return {phi.transpose() * b1, phi.transpose() * b2};
}

double draw_error(RngStream& rng, ErrorKind kind, double sd) {
  if (kind == ErrorKind::Normal) return sd * rng.standard_normal();
  return rng.skew_normal(kSkewShape, sd);
}

}  // namespace

FunctionalSample gen_X(int n, const Grid& grid, RngStream& rng,
                       int fourier_terms) {
  if (n < 1) throw ConfigError("gen_X: need n >= 1");
  if (fourier_terms < 1) throw ConfigError("gen_X: need at least one term");
  const double bound = std::sqrt(3.0);
  Eigen::MatrixXd scores(n, fourier_terms);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < fourier_terms; ++j)
      scores(i, j) = rng.uniform(-bound, bound) / (j + 1);
  return FunctionalSample(grid, scores * fourier_matrix(fourier_terms, grid));
}

std::pair<Dataset, TruthRecord> gen_dataset(const ModelSpec& spec,
                                            RngStream& rng) {
  if (spec.model_id < 1 || spec.model_id > 3)
    throw ConfigError("gen_dataset: model id must be 1, 2 or 3");
  if (spec.n < 10) throw ConfigError("gen_dataset: need n >= 10");
  if (spec.fourier_terms < 1)
    throw ConfigError("gen_dataset: need at least one Fourier term");

  const int n = spec.n;
  const Eigen::MatrixXd phi = fourier_matrix(spec.fourier_terms, spec.grid);
  FunctionalSample X = gen_X(n, spec.grid, rng, spec.fourier_terms);

  Eigen::VectorXd beta(2), alpha;
  Eigen::MatrixXd Z(n, 2);
  double error_sd = 0.0;

  switch (spec.model_id) {
    case 1: {
      beta << 1.0, 1.0;
      alpha = alpha_model1(spec.fourier_terms, phi);
      // Bivariate normal, Var(Z1) = 0.9, Var(Z2) = 0.5, Cov = 0.2.
      const double l11 = std::sqrt(0.9);
      const double l21 = 0.2 / l11;
      const double l22 = std::sqrt(0.5 - l21 * l21);
      for (int i = 0; i < n; ++i) {
        const double u1 = rng.standard_normal();
        const double u2 = rng.standard_normal();
        Z(i, 0) = l11 * u1;
        Z(i, 1) = l21 * u1 + l22 * u2;
      }
      error_sd = spec.error_kind == ErrorKind::Normal ? 0.6 : 1.0;
      break;
    }
    case 2: {
      beta << 5.0, -1.7;
      alpha = alpha_model2(spec.grid);
      for (int i = 0; i < n; ++i) {
        Z(i, 0) = rng.standard_normal();
        Z(i, 1) = rng.standard_normal();
      }
      error_sd = 1.0;
      break;
    }
    case 3: {
      beta << 2.0, -1.0;
      alpha = alpha_model1(spec.fourier_terms, phi);
      const auto [a1, a2] = model3_covariate_slopes(spec.fourier_terms, phi);
      for (int i = 0; i < n; ++i) {
        const Eigen::VectorXd curve = X.curves.row(i).transpose();
        const double ip1 = trapezoid_inner_product(curve, a1, spec.grid);
        const double ip2 = trapezoid_inner_product(curve, a2, spec.grid);
        Z(i, 0) = ip1 + 0.5 * rng.standard_normal();   // N(0, 0.25)
        Z(i, 1) = ip2 + 0.8 * rng.standard_normal();   // N(0, 0.64)
      }
      error_sd = 0.5;
      break;
    }
  }

  Eigen::VectorXd Y(n);
  for (int i = 0; i < n; ++i) {
    const Eigen::VectorXd curve = X.curves.row(i).transpose();
    const double functional = trapezoid_inner_product(curve, alpha, spec.grid);
    Y[i] = Z.row(i).dot(beta) + functional +
           draw_error(rng, spec.error_kind, error_sd);
  }

  TruthRecord truth{beta, alpha, error_sd,
                    spec.error_kind == ErrorKind::SkewNormal ? kSkewShape : 0.0};
  Dataset data(std::move(Z), std::move(Y), std::move(X), Truth{beta, alpha});
  return {std::move(data), std::move(truth)};
}

}  // namespace pflr

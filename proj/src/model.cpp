#include "pflr/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pflr/errors.hpp"

namespace pflr {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct CoreFit {
  Eigen::VectorXd beta;
  Eigen::VectorXd b;
  Eigen::VectorXd residuals;
  Eigen::MatrixXd S;  // Z^T (I-A) Z
};

// Shared least-squares core over a precomputed functional design matrix.
CoreFit fit_core(const Eigen::MatrixXd& Z, const Eigen::VectorXd& Y,
                 const Eigen::MatrixXd& B) {
  const SpdFactor Fg(B.transpose() * B, "BtB");
  const Eigen::MatrixXd MZ = Z - B * Fg.solve(B.transpose() * Z);
  const Eigen::VectorXd MY = Y - B * Fg.solve(B.transpose() * Y);

  Eigen::MatrixXd S = Z.transpose() * MZ;
  S = 0.5 * (S + S.transpose()).eval();
  const SpdFactor Fs(S, "Zt(I-A)Z");

  CoreFit out;
  out.beta = Fs.solve(Z.transpose() * MY);
  out.b = Fg.solve(B.transpose() * (Y - Z * out.beta));
  out.residuals = Y - Z * out.beta - B * out.b;
  out.S = std::move(S);
  return out;
}

// Squared prediction error at row i after refitting without it.
double deletion_refit_sq_error(const Eigen::MatrixXd& Z,
                               const Eigen::VectorXd& Y,
                               const Eigen::MatrixXd& B, Eigen::Index i) {
  const Eigen::Index n = Y.size();
  Eigen::MatrixXd Zd(n - 1, Z.cols());
  Eigen::VectorXd Yd(n - 1);
  Eigen::MatrixXd Bd(n - 1, B.cols());
  Eigen::Index r = 0;
  for (Eigen::Index j = 0; j < n; ++j) {
    if (j == i) continue;
    Zd.row(r) = Z.row(j);
    Yd[r] = Y[j];
    Bd.row(r) = B.row(j);
    ++r;
  }
  const CoreFit cf = fit_core(Zd, Yd, Bd);
  const double pred = Z.row(i).dot(cf.beta) + B.row(i).dot(cf.b);
  const double e = Y[i] - pred;
  return e * e;
}

}  // namespace

Dataset::Dataset(Eigen::MatrixXd Z_, Eigen::VectorXd Y_, FunctionalSample X_,
                 std::optional<Truth> truth_)
    : Z(std::move(Z_)), Y(std::move(Y_)), X(std::move(X_)),
      truth(std::move(truth_)) {
  const Eigen::Index nn = Y.size();
  if (Z.rows() != nn || X.n() != nn)
    throw DimensionError("Dataset: Z, Y and X must share the sample size");
  if (Z.cols() < 1) throw DimensionError("Dataset: need at least one scalar covariate");
  if (nn <= Z.cols()) throw DimensionError("Dataset: need n > p");
  if (truth) {
    if (truth->beta.size() != Z.cols())
      throw DimensionError("Dataset: truth beta length must equal p");
    if (truth->alpha_on_grid.size() != X.grid.size())
      throw DimensionError("Dataset: truth alpha must be sampled on the grid");
  }
}

PFLRFit fit(const Dataset& data, const BSplineBasis& basis) {
  const Eigen::Index n = data.n();
  const Eigen::Index p = data.p();
  if (basis.dimension() >= n - p)
    throw ConfigError("fit: spline dimension k_n = " +
                      std::to_string(basis.dimension()) +
                      " must be below n - p = " + std::to_string(n - p));

  const Eigen::MatrixXd B = functional_design(basis, data.X);
  CoreFit cf = fit_core(data.Z, data.Y, B);

  PFLRFit out{std::move(cf.beta),
              std::move(cf.b),
              basis,
              cf.residuals.squaredNorm() / static_cast<double>(n),
              cf.S / static_cast<double>(n),
              (data.Z.transpose() * data.Z) / static_cast<double>(n),
              std::move(cf.residuals)};
  out.Sigma_hat = 0.5 * (out.Sigma_hat + out.Sigma_hat.transpose()).eval();
  out.Sigma1_hat = 0.5 * (out.Sigma1_hat + out.Sigma1_hat.transpose()).eval();
  return out;
}

Eigen::MatrixXd hat_matrix(const Eigen::MatrixXd& Z, const Eigen::MatrixXd& B) {
  if (Z.rows() != B.rows())
    throw DimensionError("hat_matrix: Z and B must share rows");
  const SpdFactor Fg(B.transpose() * B, "BtB");
  const Eigen::MatrixXd A = B * Fg.solve(B.transpose());
  const Eigen::MatrixXd MZ = Z - A * Z;
  Eigen::MatrixXd S = Z.transpose() * MZ;
  S = 0.5 * (S + S.transpose()).eval();
  const SpdFactor Fs(S, "Zt(I-A)Z");
  return A + MZ * Fs.solve(MZ.transpose());
}

double loocv_score(const Dataset& data, const BSplineBasis& basis) {
  const Eigen::Index n = data.n();
  const Eigen::Index p = data.p();
  const int kn = basis.dimension();
  if (kn + p >= n) return kInf;  // saturated smoother

  const Eigen::MatrixXd B = functional_design(basis, data.X);

  Eigen::VectorXd leverage(n), yhat(n);
  try {
    const SpdFactor Fg(B.transpose() * B, "BtB");
    const Eigen::MatrixXd C = B * Fg.inverse_half();
    const Eigen::MatrixXd MZ = data.Z - B * Fg.solve(B.transpose() * data.Z);
    Eigen::MatrixXd S = data.Z.transpose() * MZ;
    S = 0.5 * (S + S.transpose()).eval();
    const SpdFactor Fs(S, "Zt(I-A)Z");
    const Eigen::VectorXd beta = Fs.solve(MZ.transpose() * data.Y);
    const Eigen::VectorXd AY = B * Fg.solve(B.transpose() * data.Y);
    yhat = AY + MZ * beta;
    const Eigen::MatrixXd Wm = MZ * Fs.inverse_half();
    leverage = C.rowwise().squaredNorm() + Wm.rowwise().squaredNorm();
  } catch (const SingularMatrixError&) {
    return kInf;
  }

  double sum = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (leverage[i] >= 1.0 - 1e-8) {
      try {
        sum += deletion_refit_sq_error(data.Z, data.Y, B, i);
      } catch (const SingularMatrixError&) {
        return kInf;
      }
    } else {
      const double e = (data.Y[i] - yhat[i]) / (1.0 - leverage[i]);
      sum += e * e;
    }
  }
  return sum / static_cast<double>(n);
}

std::vector<int> default_knot_candidates(Eigen::Index n, int degree) {
  const int hi = std::min<int>(15, static_cast<int>(n / 4) - degree - 1);
  std::vector<int> out;
  for (int c = 1; c <= hi; ++c) out.push_back(c);
  return out;
}

int select_knots(const Dataset& data, int degree,
                 const std::vector<int>& candidates) {
  if (candidates.empty())
    throw ConfigError("select_knots: empty candidate set");
  std::vector<int> sorted = candidates;
  std::sort(sorted.begin(), sorted.end());

  int best = -1;
  double best_score = kInf;
  for (int cand : sorted) {
    const double score = loocv_score(data, BSplineBasis(degree, cand));
    if (score < best_score) {
      best_score = score;
      best = cand;
    }
  }
  if (best < 0)
    throw ConfigError("select_knots: every knot candidate is infeasible");
  return best;
}

}  // namespace pflr

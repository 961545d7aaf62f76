#include "pflr/inference.hpp"

#include <algorithm>
#include <cmath>

#include "pflr/errors.hpp"
#include "pflr/rng.hpp"

namespace pflr {

Eigen::VectorXd sigma0_weights(const Eigen::MatrixXd& Sigma_hat,
                               const Eigen::MatrixXd& Sigma1_hat) {
  require_symmetric(Sigma_hat, "Sigma_hat");
  require_symmetric(Sigma1_hat, "Sigma1_hat");
  if (Sigma_hat.rows() != Sigma1_hat.rows())
    throw DimensionError("sigma0_weights: matrix orders differ");

  const Eigen::MatrixXd root = sqrt_spd(Sigma_hat);
  Eigen::MatrixXd Sigma0 = root * spd_solve(Sigma1_hat, root, "Sigma1_hat");
  Sigma0 = 0.5 * (Sigma0 + Sigma0.transpose()).eval();

  Eigen::VectorXd w = sym_eig(Sigma0).values;  // descending
  for (Eigen::Index i = 0; i < w.size(); ++i) w[i] = std::max(w[i], 0.0);
  return w;
}

Eigen::VectorXd weighted_chisq_sample(const Eigen::VectorXd& weights,
                                      int mc_draws, std::uint64_t seed) {
  if (weights.size() == 0)
    throw DomainError("weighted_chisq_sample: empty weight vector");
  if (mc_draws < 1000)
    throw DomainError("weighted_chisq_sample: need at least 1000 draws");

  RngStream rng(seed);
  Eigen::VectorXd sample(mc_draws);
  for (int b = 0; b < mc_draws; ++b) {
    double acc = 0.0;
    for (Eigen::Index j = 0; j < weights.size(); ++j) {
      const double u = rng.standard_normal();
      acc += weights[j] * u * u;
    }
    sample[b] = acc;
  }
  return sample;
}

double sample_quantile(Eigen::VectorXd sample, double prob) {
  if (!(prob > 0.0 && prob < 1.0))
    throw DomainError("sample_quantile: prob must lie in (0,1)");
  const Eigen::Index B = sample.size();
  Eigen::Index k = static_cast<Eigen::Index>(
      std::ceil(static_cast<double>(B) * prob));
  k = std::clamp<Eigen::Index>(k, 1, B);
  std::nth_element(sample.data(), sample.data() + (k - 1),
                   sample.data() + B);
  return sample[k - 1];
}

double weighted_chisq_quantile(const Eigen::VectorXd& weights, double prob,
                               int mc_draws, std::uint64_t seed) {
  if (!(prob > 0.0 && prob < 1.0))
    throw DomainError("weighted_chisq_quantile: prob must lie in (0,1)");
  return sample_quantile(weighted_chisq_sample(weights, mc_draws, seed), prob);
}

double na_statistic(const PFLRFit& fit, const Eigen::VectorXd& beta) {
  if (beta.size() != fit.beta_hat.size())
    throw DimensionError("na_statistic: beta length must equal p");
  if (!(fit.sigma2_hat > 0.0))
    throw NumericalError("na_statistic: degenerate fit, sigma2_hat is zero");
  const Eigen::VectorXd d = fit.beta_hat - beta;
  const double quad = d.dot(spd_solve(fit.Sigma_hat, d, "Sigma_hat"));
  return static_cast<double>(fit.n()) / fit.sigma2_hat * quad;
}

RegionResult region_contains(const Dataset& data, const BSplineBasis& basis,
                             const Eigen::VectorXd& beta, double gamma,
                             RegionMethod method, int mc_draws,
                             std::uint64_t mc_seed) {
  if (!(gamma > 0.0 && gamma < 1.0))
    throw DomainError("region_contains: gamma must lie in (0,1)");

  const PFLRFit f = fit(data, basis);
  RegionResult out;
  out.method = method;
  if (method == RegionMethod::NA) {
    out.statistic = na_statistic(f, beta);
    out.critical_value =
        chi2_quantile(1.0 - gamma, static_cast<int>(data.p()));
    out.hull_ok = true;
  } else {
    const ELEvaluation ev = el_statistic(data, basis, beta);
    out.weights = sigma0_weights(f.Sigma_hat, f.Sigma1_hat);
    out.critical_value =
        weighted_chisq_quantile(out.weights, 1.0 - gamma, mc_draws, mc_seed);
    out.statistic = ev.statistic;
    out.hull_ok = ev.hull_ok;
  }
  out.contained = out.statistic <= out.critical_value;
  return out;
}

}  // namespace pflr

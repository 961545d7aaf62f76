#ifndef PFLR_INFERENCE_HPP
#define PFLR_INFERENCE_HPP

#include <Eigen/Dense>
#include <cstdint>

#include "pflr/el.hpp"
#include "pflr/model.hpp"

namespace pflr {

/// Weighted-chi-square limit to calibrate the EL region against:
/// weights are the eigenvalues of Sigma0_hat, simulated with mc_draws
/// Monte Carlo draws from the given seed.
struct LimitSpec {
  Eigen::VectorXd weights;  // descending, nonnegative
  int mc_draws = 20000;
  std::uint64_t seed = 0;
};

enum class RegionMethod { NA, EL };

struct RegionResult {
  RegionMethod method;
  bool contained;
  double statistic;
  double critical_value;
  bool hull_ok;             // always true for NA
  Eigen::VectorXd weights;  // empty for NA
};

/// Eigenvalues of Sigma_hat^{1/2} Sigma1_hat^{-1} Sigma_hat^{1/2},
/// clamped to [0, inf) and sorted descending.
Eigen::VectorXd sigma0_weights(const Eigen::MatrixXd& Sigma_hat,
                               const Eigen::MatrixXd& Sigma1_hat);

/// Draws of sum_j weights_j U_j^2 with independent standard normal U_j.
Eigen::VectorXd weighted_chisq_sample(const Eigen::VectorXd& weights,
                                      int mc_draws, std::uint64_t seed);

/// Right-continuous empirical quantile: order statistic at index
/// ceil(mc_draws * prob). Deterministic given the seed.
double weighted_chisq_quantile(const Eigen::VectorXd& weights, double prob,
                               int mc_draws, std::uint64_t seed);

/// Order statistic at ceil(size * prob) of an unsorted sample.
double sample_quantile(Eigen::VectorXd sample, double prob);

/// (n / sigma2_hat) (beta_hat - beta)^T Sigma_hat^{-1} (beta_hat - beta).
double na_statistic(const PFLRFit& fit, const Eigen::VectorXd& beta);

/// Tests whether beta lies in the (1-gamma) confidence region. NA compares
/// the quadratic form against the chi-square quantile; EL compares
/// -2 log R_n against the Monte Carlo quantile of the weighted-chi-square
/// limit. An EL hull failure counts as not contained.
RegionResult region_contains(const Dataset& data, const BSplineBasis& basis,
                             const Eigen::VectorXd& beta, double gamma,
                             RegionMethod method, int mc_draws = 20000,
                             std::uint64_t mc_seed = 0);

}  // namespace pflr

#endif  // PFLR_INFERENCE_HPP

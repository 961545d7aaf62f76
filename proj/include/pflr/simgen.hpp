#ifndef PFLR_SIMGEN_HPP
#define PFLR_SIMGEN_HPP

#include <Eigen/Dense>
#include <utility>

#include "pflr/model.hpp"
#include "pflr/rng.hpp"

namespace pflr {

enum class ErrorKind { Normal, SkewNormal };

/// Configuration for one simulated dataset.
struct ModelSpec {
  int model_id = 1;  // 1, 2 or 3
  int n = 50;
  ErrorKind error_kind = ErrorKind::Normal;
  Grid grid = Grid::uniform(101);
  int fourier_terms = 50;
};

/// Ground truth of a generated dataset.
struct TruthRecord {
  Eigen::VectorXd beta;
  Eigen::VectorXd alpha_on_grid;
  double error_sd;
  double error_shape;  // skew-normal shape; 0 for normal errors
};

/// n random curves X_i = sum_{j=1}^{terms} xi_ij j^{-1} phi_j(t) with
/// phi_1 = 1, phi_j = sqrt(2) cos((j-1) pi t) and xi_ij iid U[-sqrt3, sqrt3].
FunctionalSample gen_X(int n, const Grid& grid, RngStream& rng,
                       int fourier_terms = 50);

/// One dataset from the requested simulation model, plus its truth record.
/// Identical (spec, seed) pairs produce bitwise-identical datasets.
std::pair<Dataset, TruthRecord> gen_dataset(const ModelSpec& spec,
                                            RngStream& rng);

}  // namespace pflr

#endif  // PFLR_SIMGEN_HPP

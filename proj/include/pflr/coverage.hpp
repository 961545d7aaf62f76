#ifndef PFLR_COVERAGE_HPP
#define PFLR_COVERAGE_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "pflr/inference.hpp"
#include "pflr/simgen.hpp"

namespace pflr {

struct KnotPolicy {
  bool auto_select = true;
  int fixed_knots = 0;
};

/// Configuration of a Monte Carlo coverage study. One replication set is
/// shared by both methods and all nominal levels, as in a standard
/// coverage table: each replication draws a dataset, selects knots, fits,
/// and evaluates both region tests at the true beta.
struct CoverageConfig {
  std::vector<int> models{1, 2, 3};
  std::vector<int> sample_sizes{30, 50, 80, 150};
  int reps = 1000;
  std::vector<double> gammas{0.10, 0.05};
  std::vector<ErrorKind> errors{ErrorKind::Normal};
  int degree = 2;
  KnotPolicy knots{};
  int mc_draws = 20000;
  std::uint64_t master_seed = 1;
  int threads = 0;  // 0 = hardware concurrency
  int grid_points = 101;
  int fourier_terms = 50;
};

struct CoverageRow {
  int model;
  int n;
  double gamma;
  ErrorKind error;
  RegionMethod method;
  double coverage;
  int reps;
  int hull_failures;  // EL rows; 0 for NA
  int failures;       // replications that raised an error
  long long elapsed_ms;
};

struct CoverageReport {
  std::vector<CoverageRow> rows;
};

/// Runs the study. Replication r of data cell c draws its RNG stream from
/// split_seed(master_seed, c, r), so the report is a pure function of
/// (config, master_seed) and identical for any thread budget. Failed
/// replications count against coverage for both methods and are surfaced
/// in the failures column.
CoverageReport run_coverage_study(const CoverageConfig& cfg,
                                  std::ostream* progress = nullptr);

/// CSV with header
/// model,n,gamma,error,method,coverage,reps,hull_failures,failures,elapsed_ms.
/// Timing is written as 0 unless include_timing is set, keeping default
/// reports byte-reproducible; measured times stay available on the rows.
void write_coverage_csv(std::ostream& out, const CoverageReport& report,
                        bool include_timing = false);

std::string to_string(ErrorKind kind);
std::string to_string(RegionMethod method);

}  // namespace pflr

#endif  // PFLR_COVERAGE_HPP

#include "pflr/coverage.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <ostream>
#include <thread>

#include "pflr/csv.hpp"
#include "pflr/errors.hpp"

namespace pflr {

std::string to_string(ErrorKind kind) {
  return kind == ErrorKind::Normal ? "normal" : "skew";
}

std::string to_string(RegionMethod method) {
  return method == RegionMethod::NA ? "NA" : "EL";
}

namespace {

struct RepOutcome {
  bool failed = false;
  bool hull_failure = false;
  std::vector<bool> el_contained;  // per gamma
  std::vector<bool> na_contained;  // per gamma
};

void validate(const CoverageConfig& cfg) {
  if (cfg.reps < 1) throw ConfigError("coverage: reps must be >= 1");
  if (cfg.models.empty() || cfg.sample_sizes.empty() || cfg.gammas.empty() ||
      cfg.errors.empty())
    throw ConfigError("coverage: model, n, gamma and error lists must be non-empty");
  for (double g : cfg.gammas)
    if (!(g > 0.0 && g < 1.0))
      throw ConfigError("coverage: gamma values must lie in (0,1)");
  for (int m : cfg.models)
    if (m < 1 || m > 3) throw ConfigError("coverage: model ids must be 1, 2 or 3");
  if (!cfg.knots.auto_select && cfg.knots.fixed_knots < 0)
    throw ConfigError("coverage: fixed knot count must be >= 0");
}

RepOutcome run_replication(const CoverageConfig& cfg, int model, int n,
                           ErrorKind error, std::uint64_t rep_seed,
                           const Grid& grid,
                           const std::vector<double>& na_criticals) {
  const std::size_t n_gamma = cfg.gammas.size();
  RepOutcome out;
  out.el_contained.assign(n_gamma, false);
  out.na_contained.assign(n_gamma, false);

  RngStream rng(rep_seed);
  const std::uint64_t mc_seed = split_seed(rep_seed, 0x6D63, 0);  // "mc"

  try {
    ModelSpec spec{model, n, error, grid, cfg.fourier_terms};
    auto [data, truth] = gen_dataset(spec, rng);

    const int knots =
        cfg.knots.auto_select
            ? select_knots(data, cfg.degree,
                           default_knot_candidates(data.n(), cfg.degree))
            : cfg.knots.fixed_knots;
    const BSplineBasis basis(cfg.degree, knots);

    const PFLRFit f = fit(data, basis);
    const ELEvaluation ev = el_statistic(data, basis, truth.beta);
    const Eigen::VectorXd weights =
        sigma0_weights(f.Sigma_hat, f.Sigma1_hat);
    const Eigen::VectorXd limit_sample =
        weighted_chisq_sample(weights, cfg.mc_draws, mc_seed);
    const double na_stat = na_statistic(f, truth.beta);

    out.hull_failure = !ev.hull_ok;
    for (std::size_t gi = 0; gi < n_gamma; ++gi) {
      const double el_crit =
          sample_quantile(limit_sample, 1.0 - cfg.gammas[gi]);
      out.el_contained[gi] = ev.hull_ok && ev.statistic <= el_crit;
      out.na_contained[gi] = na_stat <= na_criticals[gi];
    }
  } catch (const Error&) {
    out.failed = true;
    out.el_contained.assign(n_gamma, false);
    out.na_contained.assign(n_gamma, false);
  }
  return out;
}

}  // namespace

CoverageReport run_coverage_study(const CoverageConfig& cfg,
                                  std::ostream* progress) {
  validate(cfg);
  const Grid grid = Grid::uniform(cfg.grid_points);
  const std::size_t n_gamma = cfg.gammas.size();

  std::vector<double> na_criticals(n_gamma);
  for (std::size_t gi = 0; gi < n_gamma; ++gi)
    na_criticals[gi] = chi2_quantile(1.0 - cfg.gammas[gi], 2);

  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw < 1) hw = 1;
  const int n_threads =
      std::max(1, std::min(cfg.threads > 0 ? cfg.threads : hw, cfg.reps));

  CoverageReport report;
  std::uint64_t cell_id = 0;
  for (int model : cfg.models) {
    for (int n : cfg.sample_sizes) {
      for (ErrorKind error : cfg.errors) {
        const auto t0 = std::chrono::steady_clock::now();
        std::vector<RepOutcome> outcomes(cfg.reps);
        std::atomic<int> next{0};

        auto worker = [&]() {
          for (;;) {
            const int r = next.fetch_add(1);
            if (r >= cfg.reps) return;
            const std::uint64_t rep_seed =
                split_seed(cfg.master_seed, cell_id, static_cast<std::uint64_t>(r));
            outcomes[static_cast<std::size_t>(r)] = run_replication(
                cfg, model, n, error, rep_seed, grid, na_criticals);
          }
        };
        std::vector<std::thread> pool;
        for (int t = 1; t < n_threads; ++t) pool.emplace_back(worker);
        worker();
        for (auto& th : pool) th.join();

        int failures = 0;
        int hull_failures = 0;
        std::vector<int> el_hits(n_gamma, 0), na_hits(n_gamma, 0);
        for (const RepOutcome& o : outcomes) {
          if (o.failed) {
            ++failures;
            continue;
          }
          if (o.hull_failure) ++hull_failures;
          for (std::size_t gi = 0; gi < n_gamma; ++gi) {
            el_hits[gi] += o.el_contained[gi] ? 1 : 0;
            na_hits[gi] += o.na_contained[gi] ? 1 : 0;
          }
        }
        const auto elapsed =
            std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - t0)
                .count();

        for (std::size_t gi = 0; gi < n_gamma; ++gi) {
          const double denom = static_cast<double>(cfg.reps);
          report.rows.push_back({model, n, cfg.gammas[gi], error,
                                 RegionMethod::EL, el_hits[gi] / denom,
                                 cfg.reps, hull_failures, failures, elapsed});
          report.rows.push_back({model, n, cfg.gammas[gi], error,
                                 RegionMethod::NA, na_hits[gi] / denom,
                                 cfg.reps, 0, failures, elapsed});
        }
        if (progress) {
          (*progress) << "cell model=" << model << " n=" << n
                      << " error=" << to_string(error) << ": ";
          for (std::size_t gi = 0; gi < n_gamma; ++gi) {
            (*progress) << "gamma=" << cfg.gammas[gi]
                        << " EL=" << el_hits[gi] / static_cast<double>(cfg.reps)
                        << " NA=" << na_hits[gi] / static_cast<double>(cfg.reps)
                        << "  ";
          }
          (*progress) << "hull_failures=" << hull_failures
                      << " failures=" << failures << " elapsed_ms=" << elapsed
                      << "\n";
        }
        ++cell_id;
      }
    }
  }
  return report;
}

namespace {

std::string format_short(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

}  // namespace

void write_coverage_csv(std::ostream& out, const CoverageReport& report,
                        bool include_timing) {
  out << "model,n,gamma,error,method,coverage,reps,hull_failures,failures,"
         "elapsed_ms\n";
  for (const CoverageRow& r : report.rows) {
    out << r.model << ',' << r.n << ',' << format_short(r.gamma) << ','
        << to_string(r.error) << ',' << to_string(r.method) << ','
        << format_short(r.coverage) << ',' << r.reps << ',' << r.hull_failures
        << ',' << r.failures << ',' << (include_timing ? r.elapsed_ms : 0)
        << "\n";
  }
}

}  // namespace pflr

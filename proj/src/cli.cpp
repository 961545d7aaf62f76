#include "pflr/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "pflr/coverage.hpp"
#include "pflr/csv.hpp"
#include "pflr/errors.hpp"

namespace pflr::cli {

namespace {

ErrorKind parse_error_kind(const std::string& s) {
  if (s == "normal") return ErrorKind::Normal;
  if (s == "skew" || s == "skew_normal") return ErrorKind::SkewNormal;
  throw ConfigError("unknown error kind '" + s + "' (expected normal|skew)");
}

KnotPolicy parse_knot_policy(const std::string& s) {
  if (s == "auto") return KnotPolicy{true, 0};
  if (s.rfind("fixed:", 0) == 0) {
    try {
      const int k = std::stoi(s.substr(6));
      if (k < 0) throw ConfigError("fixed knot count must be >= 0");
      return KnotPolicy{false, k};
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception&) {
      throw ConfigError("cannot parse knot policy '" + s + "'");
    }
  }
  throw ConfigError("knot policy must be auto or fixed:N, got '" + s + "'");
}

Eigen::VectorXd parse_beta(const std::string& s) {
  std::vector<double> vals;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      vals.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw ConfigError("cannot parse beta component '" + item + "'");
    }
  }
  if (vals.empty()) throw ConfigError("--beta needs at least one component");
  Eigen::VectorXd beta(static_cast<Eigen::Index>(vals.size()));
  for (std::size_t i = 0; i < vals.size(); ++i)
    beta[static_cast<Eigen::Index>(i)] = vals[i];
  return beta;
}

std::ostream& open_output(std::ofstream& file, const std::string& path) {
  if (path.empty() || path == "-") return std::cout;
  file.open(path, std::ios::binary);
  if (!file) throw DataError("cannot open '" + path + "' for writing");
  return file;
}

// Knot selection shared by fit/region: auto runs LOOCV over the default
// candidate grid, fixed uses the requested count.
BSplineBasis resolve_basis(const Dataset& data, int degree,
                           const KnotPolicy& policy) {
  const int knots =
      policy.auto_select
          ? select_knots(data, degree,
                         default_knot_candidates(data.n(), degree))
          : policy.fixed_knots;
  BSplineBasis basis(degree, knots);
  if (basis.dimension() >= data.n() - data.p())
    throw ConfigError("spline dimension k_n = " +
                      std::to_string(basis.dimension()) +
                      " is not below n - p = " +
                      std::to_string(data.n() - data.p()));
  return basis;
}

int cmd_simulate(int model, int n, const std::string& error, std::uint64_t seed,
                 int grid_points, int fourier_terms, const std::string& out) {
  ModelSpec spec{model, n, parse_error_kind(error), Grid::uniform(grid_points),
                 fourier_terms};
  RngStream rng(seed);
  auto [data, truth] = gen_dataset(spec, rng);
  (void)truth;
  std::ofstream file;
  write_dataset_csv(open_output(file, out), data);
  return 0;
}

int cmd_fit(const std::string& data_path, int degree, const std::string& knots,
            const std::string& json_out) {
  const Dataset data = read_dataset_csv(data_path);
  const KnotPolicy policy = parse_knot_policy(knots);
  const BSplineBasis basis = resolve_basis(data, degree, policy);
  const PFLRFit f = fit(data, basis);

  std::cout << "n: " << data.n() << "\np: " << data.p() << "\nbeta_hat:";
  for (Eigen::Index j = 0; j < f.beta_hat.size(); ++j)
    std::cout << ' ' << format_double(f.beta_hat[j]);
  std::cout << "\nsigma2_hat: " << format_double(f.sigma2_hat)
            << "\ninterior_knots: " << basis.interior_knot_count()
            << "\nk_n: " << basis.dimension() << "\nalpha_hat@grid:";
  for (Eigen::Index s = 0; s < data.X.grid.size(); ++s)
    std::cout << (s == 0 ? " " : ",")
              << format_double(f.alpha_at(data.X.grid[s]));
  std::cout << "\n";

  if (!json_out.empty()) {
    nlohmann::json j;
    j["n"] = data.n();
    j["p"] = data.p();
    j["beta_hat"] = std::vector<double>(f.beta_hat.begin(), f.beta_hat.end());
    j["sigma2_hat"] = f.sigma2_hat;
    j["interior_knots"] = basis.interior_knot_count();
    j["k_n"] = basis.dimension();
    j["grid"] =
        std::vector<double>(data.X.grid.points().begin(), data.X.grid.points().end());
    std::vector<double> alpha;
    for (Eigen::Index s = 0; s < data.X.grid.size(); ++s)
      alpha.push_back(f.alpha_at(data.X.grid[s]));
    j["alpha_hat"] = alpha;
    std::ofstream out(json_out);
    if (!out) throw DataError("cannot open '" + json_out + "' for writing");
    out << j.dump(2) << "\n";
  }
  return 0;
}

int cmd_region(const std::string& data_path, const std::string& beta_str,
               double gamma, const std::string& method_str, int degree,
               const std::string& knots, int mc_draws, std::uint64_t seed) {
  const Dataset data = read_dataset_csv(data_path);
  const Eigen::VectorXd beta = parse_beta(beta_str);
  if (beta.size() != data.p())
    throw ConfigError("--beta has " + std::to_string(beta.size()) +
                      " components but the dataset has p = " +
                      std::to_string(data.p()));
  RegionMethod method;
  if (method_str == "el")
    method = RegionMethod::EL;
  else if (method_str == "na")
    method = RegionMethod::NA;
  else
    throw ConfigError("--method must be el or na");

  const BSplineBasis basis =
      resolve_basis(data, degree, parse_knot_policy(knots));
  const RegionResult res =
      region_contains(data, basis, beta, gamma, method, mc_draws, seed);

  std::cout << "method: " << to_string(res.method)
            << "\nstatistic: " << format_double(res.statistic)
            << "\ncritical_value: " << format_double(res.critical_value)
            << "\n";
  if (res.method == RegionMethod::EL) {
    std::cout << "weights:";
    for (Eigen::Index j = 0; j < res.weights.size(); ++j)
      std::cout << ' ' << format_double(res.weights[j]);
    std::cout << "\nhull_ok: " << (res.hull_ok ? "true" : "false") << "\n";
  }
  std::cout << "verdict: "
            << (res.contained
                    ? "contained"
                    : (res.method == RegionMethod::EL && !res.hull_ok
                           ? "not contained (hull failure)"
                           : "not contained"))
            << "\n";
  return 0;
}

void load_coverage_json(const std::string& path, CoverageConfig& cfg,
                        std::string& out, bool& timing) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open config '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw DataError("cannot parse config '" + path + "': " + e.what());
  }

  const auto int_list = [](const nlohmann::json& v) {
    std::vector<int> r;
    if (v.is_array())
      for (const auto& x : v) r.push_back(x.get<int>());
    else
      r.push_back(v.get<int>());
    return r;
  };
  try {
    if (j.contains("model")) cfg.models = int_list(j["model"]);
    if (j.contains("n")) cfg.sample_sizes = int_list(j["n"]);
    if (j.contains("reps")) cfg.reps = j["reps"].get<int>();
    if (j.contains("gamma")) {
      cfg.gammas.clear();
      if (j["gamma"].is_array())
        for (const auto& g : j["gamma"]) cfg.gammas.push_back(g.get<double>());
      else
        cfg.gammas.push_back(j["gamma"].get<double>());
    }
    if (j.contains("error")) {
      cfg.errors.clear();
      if (j["error"].is_array())
        for (const auto& e : j["error"])
          cfg.errors.push_back(parse_error_kind(e.get<std::string>()));
      else
        cfg.errors.push_back(parse_error_kind(j["error"].get<std::string>()));
    }
    if (j.contains("degree")) cfg.degree = j["degree"].get<int>();
    if (j.contains("knots"))
      cfg.knots = parse_knot_policy(j["knots"].get<std::string>());
    if (j.contains("mc_draws")) cfg.mc_draws = j["mc_draws"].get<int>();
    if (j.contains("seed")) cfg.master_seed = j["seed"].get<std::uint64_t>();
    if (j.contains("threads")) cfg.threads = j["threads"].get<int>();
    if (j.contains("grid_points")) cfg.grid_points = j["grid_points"].get<int>();
    if (j.contains("fourier_terms"))
      cfg.fourier_terms = j["fourier_terms"].get<int>();
    if (j.contains("timing")) timing = j["timing"].get<bool>();
    if (j.contains("out")) out = j["out"].get<std::string>();
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError("invalid config value in '" + path + "': " + e.what());
  }
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"Partial functional linear regression: B-spline profile "
               "least squares with EL and NA confidence regions"};
  app.require_subcommand(1);

  // simulate
  auto* sim = app.add_subcommand("simulate", "Generate a dataset CSV");
  int sim_model = 1, sim_n = 50, sim_grid = 101, sim_terms = 50;
  std::uint64_t sim_seed = 1;
  std::string sim_error = "normal", sim_out = "-";
  sim->add_option("--model", sim_model, "Simulation model (1-3)")
      ->required()
      ->check(CLI::Range(1, 3));
  sim->add_option("--n", sim_n, "Sample size")->required();
  sim->add_option("--error", sim_error, "Error kind: normal|skew");
  sim->add_option("--seed", sim_seed, "RNG seed");
  sim->add_option("--grid-points", sim_grid, "Functional grid resolution");
  sim->add_option("--fourier-terms", sim_terms, "Series truncation for X");
  sim->add_option("--out", sim_out, "Output path ('-' = stdout)");

  // fit
  auto* fitc = app.add_subcommand("fit", "Fit the model to a dataset CSV");
  std::string fit_data, fit_knots = "auto", fit_json;
  int fit_degree = 2;
  fitc->add_option("--data", fit_data, "Dataset CSV path")->required();
  fitc->add_option("--degree", fit_degree, "Spline degree");
  fitc->add_option("--knots", fit_knots, "auto | fixed:N");
  fitc->add_option("--json", fit_json, "Also write a JSON summary here");

  // region
  auto* reg = app.add_subcommand("region", "Confidence-region membership test");
  std::string reg_data, reg_beta, reg_method = "el", reg_knots = "auto";
  double reg_gamma = 0.05;
  int reg_degree = 2, reg_mc = 20000;
  std::uint64_t reg_seed = 1;
  reg->add_option("--data", reg_data, "Dataset CSV path")->required();
  reg->add_option("--beta", reg_beta, "Hypothesised beta, comma separated")
      ->required();
  reg->add_option("--gamma", reg_gamma, "Nominal level gamma in (0,1)");
  reg->add_option("--method", reg_method, "el | na");
  reg->add_option("--degree", reg_degree, "Spline degree");
  reg->add_option("--knots", reg_knots, "auto | fixed:N");
  reg->add_option("--mc-draws", reg_mc, "Monte Carlo draws for EL calibration");
  reg->add_option("--seed", reg_seed, "Calibration seed");

  // coverage
  auto* cov = app.add_subcommand("coverage", "Monte Carlo coverage study");
  std::string cov_config, cov_out, cov_knots, cov_error;
  std::vector<int> cov_models, cov_ns;
  std::vector<double> cov_gammas;
  int cov_reps = 0, cov_degree = -1, cov_mc = 0, cov_threads = -1,
      cov_grid = 0;
  std::uint64_t cov_seed = 0;
  bool cov_timing = false;
  cov->add_option("--config", cov_config, "JSON config (flags override)");
  cov->add_option("--model", cov_models, "Model ids, comma list")
      ->delimiter(',');
  cov->add_option("--n", cov_ns, "Sample sizes, comma list")->delimiter(',');
  cov->add_option("--reps", cov_reps, "Replications per cell");
  cov->add_option("--gamma", cov_gammas, "Gamma levels, comma list")
      ->delimiter(',');
  cov->add_option("--error", cov_error, "normal|skew or comma list");
  cov->add_option("--degree", cov_degree, "Spline degree");
  cov->add_option("--knots", cov_knots, "auto | fixed:N");
  cov->add_option("--mc-draws", cov_mc, "Monte Carlo draws per calibration");
  cov->add_option("--seed", cov_seed, "Master seed");
  cov->add_option("--threads", cov_threads, "Worker threads (0 = hardware)");
  cov->add_option("--grid-points", cov_grid, "Functional grid resolution");
  cov->add_flag("--timing", cov_timing,
                "Write measured elapsed_ms (report no longer reproducible)");
  cov->add_option("--out", cov_out, "Report CSV path ('-' = stdout)");

  try {
    try {
      app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
      return app.exit(e);
    } catch (const CLI::ParseError& e) {
      app.exit(e);
      return 2;
    }

    if (sim->parsed())
      return cmd_simulate(sim_model, sim_n, sim_error, sim_seed, sim_grid,
                          sim_terms, sim_out);
    if (fitc->parsed()) return cmd_fit(fit_data, fit_degree, fit_knots, fit_json);
    if (reg->parsed())
      return cmd_region(reg_data, reg_beta, reg_gamma, reg_method, reg_degree,
                        reg_knots, reg_mc, reg_seed);

    // coverage
    CoverageConfig cfg;
    std::string out;
    bool timing = false;
    if (!cov_config.empty()) load_coverage_json(cov_config, cfg, out, timing);
    if (cov->count("--model")) cfg.models = cov_models;
    if (cov->count("--n")) cfg.sample_sizes = cov_ns;
    if (cov->count("--reps")) cfg.reps = cov_reps;
    if (cov->count("--gamma")) cfg.gammas = cov_gammas;
    if (cov->count("--error")) {
      cfg.errors.clear();
      std::stringstream ss(cov_error);
      std::string item;
      while (std::getline(ss, item, ','))
        cfg.errors.push_back(parse_error_kind(item));
    }
    if (cov->count("--degree")) cfg.degree = cov_degree;
    if (cov->count("--knots")) cfg.knots = parse_knot_policy(cov_knots);
    if (cov->count("--mc-draws")) cfg.mc_draws = cov_mc;
    if (cov->count("--seed")) cfg.master_seed = cov_seed;
    if (cov->count("--threads")) cfg.threads = cov_threads;
    if (cov->count("--grid-points")) cfg.grid_points = cov_grid;
    if (cov->count("--timing")) timing = cov_timing;
    if (cov->count("--out")) out = cov_out;

    const CoverageReport report = run_coverage_study(cfg, &std::cerr);
    std::ofstream file;
    write_coverage_csv(open_output(file, out), report, timing);
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const DimensionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const NumericalError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
}

int run(const std::vector<std::string>& args) {
  std::vector<std::string> full;
  full.reserve(args.size() + 1);
  full.emplace_back("pflr");
  full.insert(full.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  argv.reserve(full.size());
  for (const auto& a : full) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data());
}

}  // namespace pflr::cli

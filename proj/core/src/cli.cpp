#include "srd/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "srd/bounds.hpp"
#include "srd/errors.hpp"
#include "srd/experiment_config.hpp"
#include "srd/free_probability.hpp"
#include "srd/hypothesis.hpp"
#include "srd/random_matrix.hpp"
#include "srd/result_io.hpp"
#include "srd/scalar_functions.hpp"
#include "srd/simulation.hpp"
#include "srd/version.hpp"

namespace srd {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string iso8601_utc_now() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

/// Relative output paths resolve under SRD_OUTPUT_ROOT when it is set.
fs::path resolve_out(const std::string& out) {
  fs::path p(out);
  const char* root = std::getenv("SRD_OUTPUT_ROOT");
  if (root && *root && p.is_relative()) {
    return fs::path(root) / p;
  }
  return p;
}

std::string run_id_for(const std::string& config_echo, const std::string& created) {
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a64(config_echo + created)));
  return buf;
}

void require_seed(const ExperimentConfig& cfg) {
  if (!cfg.seed_set) {
    throw std::invalid_argument(
        "a --seed is required for stochastic commands (no time-based default)");
  }
}

// Loads --config (if present among the raw args) as defaults before CLI11
// binds the explicit flags over them.
ExperimentConfig preload_config(const std::vector<std::string>& args) {
  for (std::size_t i = 0; i + 1 < args.size(); ++i) {
    if (args[i] == "--config") {
      return ExperimentConfig::parse(read_file(args[i + 1]));
    }
  }
  ExperimentConfig cfg;
  return cfg;
}

json config_json(const ExperimentConfig& cfg) {
  json j;
  j["omega"] = cfg.omega;
  j["alpha"] = cfg.alpha;
  j["rho"] = cfg.rho;
  j["n"] = cfg.n;
  j["trials"] = cfg.trials;
  if (cfg.seed_set) j["seed"] = cfg.seed;
  j["distribution"] = cfg.distribution;
  j["basis"] = cfg.basis_kind;
  return j;
}

int cmd_bounds(const ExperimentConfig& cfg, bool as_json) {
  const DistributionSpec f = cfg.make_distribution();
  const double theta = normalized_entropy_power(cfg.omega, f);
  const bool corollary = corollary_holds(cfg.alpha, cfg.omega, f);
  const double lower = lower_bound_rate(cfg.alpha, cfg.omega, f);
  const double upper = upper_bound_rate(cfg.alpha, cfg.omega, f);
  const double general_universal = general_source_rate(cfg.omega, cfg.alpha, true);
  const double general_basis = general_source_rate(cfg.omega, cfg.alpha, false);

  if (as_json) {
    json j;
    j["omega"] = cfg.omega;
    j["alpha"] = cfg.alpha;
    j["distribution"] = cfg.distribution;
    j["theta"] = theta;
    j["corollary_holds"] = corollary;
    j["lower_bound_rate"] = lower;
    j["upper_bound_rate"] = upper;
    j["general_universal_rate"] = general_universal;
    j["general_basis_specific_rate"] = general_basis;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "omega                = " << cfg.omega << "\n"
              << "alpha                = " << cfg.alpha << "\n"
              << "distribution         = " << cfg.distribution << "\n"
              << "theta                = " << theta << "\n"
              << "corollary holds      = " << (corollary ? "yes" : "no") << "\n"
              << "lower bound rate     = " << lower << "\n"
              << "upper bound rate     = " << upper << "\n"
              << "general universal    = " << general_universal << "\n"
              << "general basis-spec.  = " << general_basis << "\n";
  }
  return 0;
}

int cmd_epsilon(const ExperimentConfig& cfg, std::int64_t mc_draws, bool as_json) {
  const DistributionSpec f = cfg.make_distribution();
  const MixtureModel model(cfg.rho, cfg.omega, f);
  const ThresholdSet t_star = optimal_threshold_set(model);
  const double eps = bayes_error(model, t_star);

  json j;
  j["omega"] = cfg.omega;
  j["rho"] = cfg.rho;
  j["distribution"] = cfg.distribution;
  j["epsilon"] = eps;
  json intervals = json::array();
  for (const auto& iv : t_star.intervals()) {
    intervals.push_back({iv.lo, iv.hi});
  }
  j["threshold_set"] = intervals;

  if (mc_draws > 0) {
    require_seed(cfg);
    const auto mc = bayes_error_monte_carlo(model, t_star, mc_draws, cfg.seed);
    j["monte_carlo"] = mc.value;
    j["monte_carlo_std_error"] = mc.std_error;
    j["monte_carlo_draws"] = mc.draws;
  }

  if (as_json) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "epsilon(rho=" << cfg.rho << ", omega=" << cfg.omega
              << ", F=" << cfg.distribution << ") = " << eps << "\n";
    if (mc_draws > 0) {
      std::cout << "monte carlo          = " << j["monte_carlo"].get<double>()
                << " +/- " << j["monte_carlo_std_error"].get<double>() << " ("
                << mc_draws << " draws)\n";
    }
  }
  return 0;
}

int cmd_figure(const ExperimentConfig& cfg, int figure_id, int grid,
               double alpha_override, const std::string& out) {
  const FigureTable table =
      figure_curve(figure_id, cfg.omega, alpha_override, grid);
  fs::path path = resolve_out(out);
  if (path.empty()) {
    throw std::invalid_argument("figure: an --out path is required");
  }
  if (fs::is_directory(path) || path.extension() != ".csv") {
    path /= "figure" + std::to_string(figure_id) + ".csv";
  }
  CsvTable csv;
  csv.columns.assign(table.columns.begin(), table.columns.end());
  for (const auto& row : table.rows) {
    csv.rows.push_back({csv_double(row[0]), csv_double(row[1]), csv_double(row[2])});
  }
  write_csv(path, csv);
  std::cout << "wrote " << path.string() << " (" << table.rows.size()
            << " rows)\n";
  return 0;
}

int cmd_simulate(const ExperimentConfig& cfg, int threads, bool as_json) {
  require_seed(cfg);
  if (cfg.output_path.empty()) {
    throw std::invalid_argument("simulate: an --out directory is required");
  }
  const DistributionSpec f = cfg.make_distribution();
  const SparsityConfig sparsity(cfg.omega, cfg.n);
  const ExperimentAggregate agg =
      run_experiment(sparsity, f, cfg.rho, cfg.alpha, cfg.trials, cfg.seed,
                     cfg.make_basis_kind(), threads);
  const double eps =
      bayes_error(MixtureModel(agg.rho_effective, cfg.omega, f));

  const fs::path dir = resolve_out(cfg.output_path);
  fs::create_directories(dir);

  CsvTable trials;
  trials.columns = {"trial", "seed", "distortion", "normalized_distortion",
                    "exceeded"};
  for (std::size_t i = 0; i < agg.trials.size(); ++i) {
    const auto& t = agg.trials[i];
    trials.rows.push_back({std::to_string(i), std::to_string(t.seed),
                           std::to_string(t.distortion_count),
                           csv_double(t.normalized_distortion),
                           t.exceeded ? "1" : "0"});
  }
  write_csv(dir / "trials.csv", trials);

  json j;
  j["version"] = kVersion;
  j["config"] = config_json(cfg);
  j["m"] = agg.m;
  j["k"] = agg.k;
  j["rho_effective"] = agg.rho_effective;
  j["epsilon_analytic"] = eps;
  j["mean_normalized_distortion"] = agg.mean_normalized_distortion;
  j["stddev_normalized_distortion"] = agg.stddev_normalized_distortion;
  j["empirical_pe"] = agg.empirical_pe;
  atomic_write(dir / "aggregate.json", j.dump(2) + "\n");

  ResultManifest manifest;
  manifest.created = iso8601_utc_now();
  manifest.version = kVersion;
  manifest.config_echo = cfg.serialize();
  manifest.run_id = run_id_for(manifest.config_echo, manifest.created);
  manifest.files = {"trials.csv", "aggregate.json"};
  manifest.write(dir);

  if (as_json) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "trials               = " << cfg.trials << "\n"
              << "epsilon (analytic)   = " << eps << "\n"
              << "mean distortion d/n  = " << agg.mean_normalized_distortion
              << "\n"
              << "stddev d/n           = " << agg.stddev_normalized_distortion
              << "\n"
              << "empirical P_e        = " << agg.empirical_pe << "\n"
              << "results in           = " << dir.string() << "\n";
  }
  return 0;
}

int cmd_spectrum(const ExperimentConfig& cfg, bool as_json) {
  require_seed(cfg);
  if (cfg.output_path.empty()) {
    throw std::invalid_argument("spectrum: an --out directory is required");
  }
  const ProjectedSpectrum spec =
      empirical_projected_spectrum(cfg.n, cfg.rho, cfg.omega, cfg.seed);
  const SpectralMeasure limit = projected_spectrum_limit(cfg.rho, cfg.omega);

  const auto count = spec.eigenvalues.size();
  std::vector<double> limit_cdf(count);
  for (std::size_t i = 0; i < count; ++i) {
    limit_cdf[i] = limit.cdf(spec.eigenvalues[i]);
  }
  double ks = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const double hi = (static_cast<double>(i) + 1.0) / count - limit_cdf[i];
    const double lo = limit_cdf[i] - static_cast<double>(i) / count;
    ks = std::max(ks, std::max(hi, lo));
  }

  const fs::path dir = resolve_out(cfg.output_path);
  fs::create_directories(dir);

  CsvTable eigs;
  eigs.columns = {"index", "eigenvalue"};
  for (std::size_t i = 0; i < count; ++i) {
    eigs.rows.push_back({std::to_string(i), csv_double(spec.eigenvalues[i])});
  }
  write_csv(dir / "eigenvalues.csv", eigs);

  CsvTable cdf;
  cdf.columns = {"x", "empirical_cdf", "limit_cdf"};
  for (std::size_t i = 0; i < count; ++i) {
    cdf.rows.push_back({csv_double(spec.eigenvalues[i]),
                        csv_double((static_cast<double>(i) + 1.0) / count),
                        csv_double(limit_cdf[i])});
  }
  write_csv(dir / "reference_cdf.csv", cdf);

  ResultManifest manifest;
  manifest.created = iso8601_utc_now();
  manifest.version = kVersion;
  manifest.config_echo = cfg.serialize();
  manifest.run_id = run_id_for(manifest.config_echo, manifest.created);
  manifest.files = {"eigenvalues.csv", "reference_cdf.csv"};
  manifest.write(dir);

  if (as_json) {
    json j;
    j["n"] = spec.n;
    j["m"] = spec.m;
    j["k"] = spec.k;
    j["rho"] = cfg.rho;
    j["omega"] = cfg.omega;
    j["ks_statistic"] = ks;
    j["m_side_rank_deficient"] = spec.m_side_rank_deficient;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "n = " << spec.n << ", m = " << spec.m << ", k = " << spec.k
              << "\n"
              << "KS vs limit law      = " << ks << "\n";
    if (spec.m_side_rank_deficient) {
      std::cout << "note: rho > omega, " << (spec.m - spec.k)
                << " structural zero eigenvalues on the m side\n";
    }
    std::cout << "results in           = " << dir.string() << "\n";
  }
  return 0;
}

int cmd_discrete_demo(const ExperimentConfig& cfg, int k,
                      const std::string& alphabet_text, int trials,
                      bool as_json) {
  require_seed(cfg);
  std::vector<double> alphabet;
  {
    std::stringstream ss(alphabet_text);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (!item.empty()) alphabet.push_back(std::stod(item));
    }
  }
  if (alphabet.empty()) {
    throw std::invalid_argument("discrete-demo: empty alphabet");
  }
  const DistributionSpec f = DistributionSpec::discrete(alphabet);
  SparsityConfig sparsity(static_cast<double>(k) / cfg.n + 1e-12, cfg.n);
  if (sparsity.k != k) {
    // the ratio rounding above should be exact; guard anyway
    throw std::invalid_argument("discrete-demo: k/n rounding failed");
  }

  int successes = 0, no_match = 0, multi_match = 0;
  Eigen::VectorXd last_u;
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t trial_seed = cfg.seed + static_cast<std::uint64_t>(t);
    SourceInstance instance = gen_instance(sparsity, f, BasisKind::haar, trial_seed);
    Rng rng(trial_seed ^ 0x9e3779b97f4a7c15ull);
    const Eigen::MatrixXd a = gaussian_matrix(1, cfg.n, 1.0 / cfg.n, rng);
    const double y = (a * instance.x)(0);
    const DiscreteRecovery rec = discrete_one_sample_recover(
        y, a.row(0), instance.basis, k, alphabet);
    if (rec.status == RecoveryStatus::unique &&
        (rec.u - instance.u).lpNorm<Eigen::Infinity>() < 1e-9) {
      ++successes;
      last_u = rec.u;
    } else if (rec.status == RecoveryStatus::no_match) {
      ++no_match;
    } else {
      ++multi_match;
    }
  }

  if (as_json) {
    json j;
    j["n"] = cfg.n;
    j["k"] = k;
    j["alphabet"] = alphabet;
    j["trials"] = trials;
    j["successes"] = successes;
    j["no_match_errors"] = no_match;
    j["multiple_match_errors"] = multi_match;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "one-sample recovery: " << successes << "/" << trials
              << " exact (" << no_match << " no-match, " << multi_match
              << " multiple-match)\n";
    if (trials == 1 && successes == 1) {
      std::cout << "recovered u = [";
      for (int i = 0; i < last_u.size(); ++i) {
        std::cout << (i ? " " : "") << last_u(i);
      }
      std::cout << "]\n";
    }
    std::cout << "success = " << (successes == trials ? "true" : "false")
              << "\n";
  }
  if (successes != trials) {
    throw NumericError("discrete-demo: recovery failed on " +
                       std::to_string(trials - successes) + " of " +
                       std::to_string(trials) + " trials");
  }
  return 0;
}

}  // namespace

int run_cli(std::vector<std::string> args) {
  CLI::App app{"sampling-rate bounds and experiments for sparse support recovery"};
  app.require_subcommand(1);

  ExperimentConfig cfg;
  try {
    cfg = preload_config(args);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  std::string config_path;
  bool as_json = false;
  std::int64_t mc_draws = 0;
  int figure_id = 1;
  int grid = 0;
  double alpha_override = -1.0;
  std::string out_path;
  int k = 4;
  std::string alphabet_text = "-1,1";
  int demo_trials = 1;
  int threads = 1;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "key=value config file");
    sub->add_option("--seed", [&cfg](const CLI::results_t& res) {
      cfg.seed = std::stoull(res[0]);
      cfg.seed_set = true;
      return true;
    }, "64-bit seed for stochastic commands");
    sub->add_flag("--json", as_json, "machine-readable output on stdout");
  };

  CLI::App* bounds_cmd = app.add_subcommand("bounds", "analytic rate bounds");
  bounds_cmd->add_option("--omega", cfg.omega, "sparsity rate in (0,1)");
  bounds_cmd->add_option("--alpha", cfg.alpha, "normalized distortion in [0,1]");
  bounds_cmd->add_option("--dist", cfg.distribution, "nonzero-value law");
  add_common(bounds_cmd);

  CLI::App* epsilon_cmd =
      app.add_subcommand("epsilon", "minimal scalar-test error probability");
  epsilon_cmd->add_option("--omega", cfg.omega, "sparsity rate / prior");
  epsilon_cmd->add_option("--rho", cfg.rho, "sampling rate");
  epsilon_cmd->add_option("--dist", cfg.distribution, "nonzero-value law");
  epsilon_cmd->add_option("--mc", mc_draws, "Monte Carlo cross-check draws");
  add_common(epsilon_cmd);

  CLI::App* figure_cmd = app.add_subcommand("figure", "emit a figure data table");
  figure_cmd->add_option("--id", figure_id, "figure id (1, 2 or 3)")->required();
  figure_cmd->add_option("--grid", grid, "grid points (default 100 / 200)");
  figure_cmd->add_option("--omega", cfg.omega, "sparsity rate");
  figure_cmd->add_option("--alpha", alpha_override,
                         "distortion (figures 2-3; default 0.3 / 0.95)");
  figure_cmd->add_option("--out", out_path, "output CSV path or directory")
      ->required();
  add_common(figure_cmd);

  CLI::App* simulate_cmd =
      app.add_subcommand("simulate", "seeded thresholding-estimator trials");
  simulate_cmd->add_option("--omega", cfg.omega, "sparsity rate");
  simulate_cmd->add_option("--alpha", cfg.alpha, "distortion level");
  simulate_cmd->add_option("--rho", cfg.rho, "sampling rate");
  simulate_cmd->add_option("--n", cfg.n, "vector length");
  simulate_cmd->add_option("--trials", cfg.trials, "number of trials");
  simulate_cmd->add_option("--dist", cfg.distribution, "nonzero-value law");
  simulate_cmd->add_option("--basis", cfg.basis_kind, "identity or haar");
  simulate_cmd->add_option("--threads", threads, "worker threads");
  simulate_cmd->add_option("--out", cfg.output_path, "output directory");
  add_common(simulate_cmd);

  CLI::App* spectrum_cmd =
      app.add_subcommand("spectrum", "empirical projected spectrum vs limit law");
  spectrum_cmd->add_option("--n", cfg.n, "matrix dimension (<= 4000)");
  spectrum_cmd->add_option("--rho", cfg.rho, "sampling rate");
  spectrum_cmd->add_option("--omega", cfg.omega, "sparsity rate");
  spectrum_cmd->add_option("--out", cfg.output_path, "output directory");
  add_common(spectrum_cmd);

  CLI::App* demo_cmd =
      app.add_subcommand("discrete-demo", "one-sample exact recovery demo");
  demo_cmd->add_option("--n", cfg.n, "vector length");
  demo_cmd->add_option("--k", k, "sparsity");
  demo_cmd->add_option("--alphabet", alphabet_text, "comma-separated nonzero values");
  demo_cmd->add_option("--trials", demo_trials, "seeded trials");
  add_common(demo_cmd);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*bounds_cmd) return cmd_bounds(cfg, as_json);
    if (*epsilon_cmd) return cmd_epsilon(cfg, mc_draws, as_json);
    if (*figure_cmd) {
      if (grid <= 0) grid = figure_id == 1 ? 100 : 200;
      return cmd_figure(cfg, figure_id, grid, alpha_override, out_path);
    }
    if (*simulate_cmd) return cmd_simulate(cfg, threads, as_json);
    if (*spectrum_cmd) return cmd_spectrum(cfg, as_json);
    if (*demo_cmd) {
      return cmd_discrete_demo(cfg, k, alphabet_text, demo_trials, as_json);
    }
  } catch (const NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace srd

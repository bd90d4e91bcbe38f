// roughlab command-line front end: config ingestion, experiment
// orchestration, result persistence. Exit codes: 0 pass, 2 acceptance
// failure, 1 error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "roughlab/config.hpp"
#include "roughlab/ladder.hpp"
#include "roughlab/lift.hpp"
#include "roughlab/processes.hpp"
#include "roughlab/schemes.hpp"

namespace fs = std::filesystem;
using namespace roughlab;

namespace {

struct CliCommon {
  std::string config_path;
  std::vector<std::string> overrides;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int workers = 0;
};

nlohmann::json load_config(const CliCommon& cli) {
  nlohmann::json j = nlohmann::json::object();
  if (!cli.config_path.empty()) {
    std::ifstream in(cli.config_path);
    if (!in) throw std::runtime_error("cannot open config file: " + cli.config_path);
    in >> j;
  }
  for (const std::string& ov : cli.overrides) apply_override(j, ov);
  if (cli.seed_set) j["seeds"] = nlohmann::json{{"base", cli.seed}, {"count", 1}};
  return j;
}

fs::path ensure_out_dir(const CliCommon& cli, const ExperimentConfig& cfg) {
  fs::path dir = !cli.out_dir.empty() ? fs::path(cli.out_dir)
                                      : (!cfg.out_dir.empty() ? fs::path(cfg.out_dir) : fs::path("out"));
  fs::create_directories(dir);
  return dir;
}

void write_text(const fs::path& p, const std::string& content) {
  std::ofstream os(p);
  os << content;
  if (content.empty() || content.back() != '\n') os << "\n";
}

void write_manifest(const fs::path& dir, const nlohmann::json& config) {
  std::ofstream os(dir / "manifest.json");
  os << make_manifest(config).dump(2) << "\n";
}

Partition master_grid(const ExperimentConfig& cfg) {
  int n = cfg.driver.family == DriverFamily::Semimartingale ? cfg.n_ref + 2 : cfg.n_ref;
  return Partition::dyadic(n, cfg.T);
}

// Sample the configured driver on the master grid (first seed).
CadlagPath sample_driver(const ExperimentConfig& cfg, std::uint64_t seed, const Partition& grid) {
  switch (cfg.driver.family) {
    case DriverFamily::Brownian:
      return sample_brownian(seed, cfg.driver.cov_scale * Mat::Identity(cfg.driver.dim, cfg.driver.dim),
                             grid);
    case DriverFamily::Ito: {
      ItoSpec spec;
      spec.x0 = Vec::Zero(cfg.driver.dim);
      spec.brownian_dim = cfg.driver.dim;
      const double da = cfg.driver.ito.drift_amp, vb = cfg.driver.ito.vol_base,
                   va = cfg.driver.ito.vol_amp;
      const Index dim = cfg.driver.dim;
      spec.b = [da, dim](double, const Vec& w) {
        Vec b(dim);
        for (Index i = 0; i < dim; ++i) b(i) = da * std::tanh(w(i));
        return b;
      };
      spec.H = [vb, va, dim](double, const Vec& w) {
        Mat h = Mat::Zero(dim, dim);
        for (Index i = 0; i < dim; ++i) h(i, i) = vb + va * std::tanh(w(i));
        return h;
      };
      return sample_ito(seed, spec, grid).x;
    }
    case DriverFamily::Levy:
    case DriverFamily::Semimartingale:
      return sample_levy(seed, cfg.driver.levy, grid, cfg.n_max, cfg.psi_policy).L;
    case DriverFamily::Fbm: {
      FbmSpec fb = cfg.driver.fbm;
      fb.dim = cfg.driver.dim;
      return sample_fbm(seed, fb, grid);
    }
    case DriverFamily::Eta:
      return deterministic_eta(cfg.driver.eta, grid);
  }
  throw std::logic_error("unreachable driver family");
}

int cmd_simulate(const CliCommon& cli) {
  nlohmann::json raw = load_config(cli);
  ExperimentConfig cfg = parse_config(raw);
  fs::path dir = ensure_out_dir(cli, cfg);
  const std::uint64_t seed = cfg.seeds.front();
  Partition grid = master_grid(cfg);

  if (cfg.driver.family == DriverFamily::Levy || cfg.driver.family == DriverFamily::Semimartingale) {
    LevySample s = sample_levy(seed, cfg.driver.levy, grid, cfg.n_max, cfg.psi_policy);
    std::ofstream(dir / "driver.csv") << [&] { std::ostringstream os; write_path_csv(os, s.L); return os.str(); }();
    std::ofstream(dir / "brownian_part.csv") << [&] { std::ostringstream os; write_path_csv(os, s.W); return os.str(); }();
    std::ofstream(dir / "jump_part.csv") << [&] { std::ostringstream os; write_path_csv(os, s.phi); return os.str(); }();
  } else {
    CadlagPath X = sample_driver(cfg, seed, grid);
    std::ostringstream os;
    write_path_csv(os, X);
    write_text(dir / "driver.csv", os.str());
  }
  write_manifest(dir, raw);
  std::cout << "wrote driver path(s) to " << dir.string() << "\n";
  return 0;
}

int cmd_lift(const CliCommon& cli) {
  nlohmann::json raw = load_config(cli);
  ExperimentConfig cfg = parse_config(raw);
  fs::path dir = ensure_out_dir(cli, cfg);
  const std::uint64_t seed = cfg.seeds.front();
  Partition grid = master_grid(cfg);

  if (cfg.driver.family == DriverFamily::Eta) {
    // Joint lift of (eta, W): the rough-SDE driver.
    CadlagPath eta = deterministic_eta(cfg.driver.eta, grid);
    CadlagPath W = sample_brownian(seed, Mat::Identity(1, 1), grid);
    PartitionSequence S = PartitionSequence::dyadic(cfg.n_min, cfg.n_max, cfg.T);
    JointLift jl = joint_lift_eta_w(eta, W, S, cfg.p);
    std::ostringstream os;
    write_roughpath_json(os, jl.lambda);
    write_text(dir / "roughpath.json", os.str());
    nlohmann::json rep;
    rep["levels"] = jl.levels;
    rep["quad_covar_norm"] = jl.quad_covar_norm;
    rep["fitted_decay_slope"] = jl.fitted_decay_slope;
    write_text(dir / "quad_covar.json", rep.dump(2));
    write_manifest(dir, raw);
    std::cout << "joint lift written; quad covariation decay slope " << jl.fitted_decay_slope
              << "\n";
    return 0;
  }

  CadlagPath X = sample_driver(cfg, seed, grid);
  std::vector<Partition> levels;
  for (int n = cfg.n_min; n <= cfg.n_ref; ++n) levels.push_back(Partition::dyadic(n, cfg.T));
  PartitionSequence S(levels, PartitionFamily::Dyadic, levels.back().mesh() + kTimeTol);
  double tol = raw.contains("lift_tolerance") ? raw.at("lift_tolerance").get<double>() : -1.0;
  CanonicalLift lift = canonical_lift(X, S, cfg.p, tol);
  std::ostringstream os;
  write_roughpath_json(os, lift.rough);
  write_text(dir / "roughpath.json", os.str());
  nlohmann::json rep;
  rep["uniform_cauchy"] = lift.report.uniform_cauchy;
  rep["tolerance"] = lift.report.tolerance;
  rep["converged"] = lift.report.converged;
  write_text(dir / "lift_report.json", rep.dump(2));
  write_manifest(dir, raw);
  std::cout << "canonical lift written (final Cauchy residual "
            << lift.report.uniform_cauchy.back() << ")\n";
  return 0;
}

int cmd_rie_check(const CliCommon& cli) {
  nlohmann::json raw = load_config(cli);
  ExperimentConfig cfg = parse_config(raw);
  fs::path dir = ensure_out_dir(cli, cfg);
  const std::uint64_t seed = cfg.seeds.front();
  Partition grid = master_grid(cfg);
  CadlagPath X = sample_driver(cfg, seed, grid);

  std::vector<Partition> levels;
  for (int n = cfg.n_min; n <= cfg.n_max; ++n) {
    if (cfg.driver.family == DriverFamily::Levy) {
      LevySample s = sample_levy(seed, cfg.driver.levy, grid, n, cfg.psi_policy);
      levels.push_back(build_levy_partition(n, cfg.T, s.big_jump_times));
    } else if (cfg.driver.family == DriverFamily::Semimartingale) {
      levels.push_back(build_stopping_partition(X, n));
    } else {
      levels.push_back(Partition::dyadic(n, cfg.T));
    }
  }
  PartitionSequence S(levels, PartitionFamily::Custom, levels.back().mesh() + kTimeTol);
  double scale = raw.contains("control_scale") ? raw.at("control_scale").get<double>() : 1.0;
  RieReport rep = rie_diagnostic(X, S, cfg.p, ControlFunction::linear(scale));
  write_text(dir / "rie_report.json", rie_report_json(rep));
  write_manifest(dir, raw);
  std::cout << rie_report_json(rep) << "\n";
  return rep.pass ? 0 : 2;
}

int cmd_solve(const CliCommon& cli) {
  nlohmann::json raw = load_config(cli);
  ExperimentConfig cfg = parse_config(raw);
  fs::path dir = ensure_out_dir(cli, cfg);
  const std::uint64_t seed = cfg.seeds.front();
  Partition grid = master_grid(cfg);
  CadlagPath X = sample_driver(cfg, seed, grid);
  Coefficients coeffs =
      make_coefficients(cfg.coeff_kind, cfg.state_dim, cfg.driver.dim, cfg.coeff_params);
  CadlagPath y = euler_scheme(coeffs, cfg.y0, X, Partition::dyadic(cfg.n_max, cfg.T));
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os.precision(17);
  os << "t";
  for (Index c = 0; c < y.dim(); ++c) os << ",y" << (c + 1);
  os << "\n";
  for (Index i = 0; i < y.size(); ++i) {
    os << y.time(i);
    for (Index c = 0; c < y.dim(); ++c) os << "," << y.value(i)(c);
    os << "\n";
  }
  write_text(dir / "solution.csv", os.str());
  write_manifest(dir, raw);
  std::cout << "wrote solution.csv (" << y.size() << " rows)\n";
  return 0;
}

int cmd_rates(const CliCommon& cli) {
  nlohmann::json raw = load_config(cli);
  ExperimentConfig cfg = parse_config(raw);
  if (cli.workers > 0) cfg.workers = cli.workers;
  fs::path dir = ensure_out_dir(cli, cfg);
  RateReport rep = run_scheme_ladder(cfg);
  {
    std::ofstream os(dir / "rates.csv");
    write_rate_csv(os, rep);
  }
  write_text(dir / "summary.json", rate_summary_json(rep));
  {
    std::ofstream os(dir / "plot.dat");
    write_plot_data(os, rep);
  }
  write_manifest(dir, raw);
  std::cout << "median slope " << rep.median_slope << " vs theoretical " << rep.theoretical
            << (rep.pass ? " [pass]" : " [fail]") << "\n";
  return rep.pass ? 0 : 2;
}

int cmd_approx(const CliCommon& cli) {
  nlohmann::json raw = load_config(cli);
  ExperimentConfig cfg = parse_config(raw);
  if (cli.workers > 0) cfg.workers = cli.workers;
  fs::path dir = ensure_out_dir(cli, cfg);
  ApproxReport rep = run_approx_ladder(cfg);
  {
    std::ofstream os(dir / "approx.csv");
    write_approx_csv(os, rep);
  }
  write_text(dir / "summary.json", approx_summary_json(rep));
  write_manifest(dir, raw);
  std::cout << (rep.levy_mode ? "levy small-jump mode" : "fixed-phi mode") << ", pass="
            << (rep.pass ? "true" : "false") << "\n";
  return rep.pass ? 0 : 2;
}

int cmd_ablate(const CliCommon& cli) {
  nlohmann::json raw = load_config(cli);
  ExperimentConfig cfg = parse_config(raw);
  fs::path dir = ensure_out_dir(cli, cfg);
  AblationReport rep = jump_ablation(cfg);
  write_text(dir / "ablation.json", ablation_json(rep));
  write_manifest(dir, raw);
  std::cout << ablation_json(rep) << "\n";
  return rep.pass ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"roughlab: Euler schemes for rough differential equations along vanishing-mesh partitions"};
  app.require_subcommand(1);

  CliCommon cli;
  auto add_common = [&cli](CLI::App* sub) {
    sub->add_option("--config", cli.config_path, "JSON config file");
    sub->add_option("--set", cli.overrides, "dotted-path override key=value (repeatable)");
    sub->add_option("--out", cli.out_dir, "output directory");
    auto* s = sub->add_option("--seed", cli.seed, "single seed override");
    sub->add_option("--workers", cli.workers, "worker threads for seed-parallel runs");
    sub->final_callback([&cli, s]() { cli.seed_set = s->count() > 0; });
  };

  CLI::App* simulate = app.add_subcommand("simulate", "sample a driver path to CSV");
  CLI::App* lift = app.add_subcommand("lift", "canonical (or joint) rough path lift to JSON");
  CLI::App* rie = app.add_subcommand("rie-check", "Riemann-sum property diagnostic");
  CLI::App* solve = app.add_subcommand("solve", "run the Euler scheme, write the solution");
  CLI::App* rates = app.add_subcommand("rates", "convergence-rate ladder");
  CLI::App* approx = app.add_subcommand("approx", "approximate-Euler ladder");
  CLI::App* ablate = app.add_subcommand("ablate", "jump-time partition ablation");
  for (CLI::App* sub : {simulate, lift, rie, solve, rates, approx, ablate}) add_common(sub);

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) return cmd_simulate(cli);
    if (lift->parsed()) return cmd_lift(cli);
    if (rie->parsed()) return cmd_rie_check(cli);
    if (solve->parsed()) return cmd_solve(cli);
    if (rates->parsed()) return cmd_rates(cli);
    if (approx->parsed()) return cmd_approx(cli);
    if (ablate->parsed()) return cmd_ablate(cli);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

// Acceptance suite: runs every criterion at its stated tolerance and prints
// one pass/fail line per criterion. Exit code 0 when all pass, 2 otherwise.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <thread>
#include <vector>

#include "roughlab/integrate.hpp"
#include "roughlab/ladder.hpp"
#include "roughlab/lift.hpp"
#include "roughlab/processes.hpp"
#include "roughlab/schemes.hpp"
#include "roughlab/variation.hpp"
#include "support.hpp"

using namespace roughlab;

namespace {

int g_failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail) {
  std::printf("[%s] criterion %2d: %s (%s)\n", pass ? "PASS" : "FAIL", id, name.c_str(),
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

double elapsed_s(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int hw_workers() {
  unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 4 : static_cast<int>(n);
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4g", x);
  return buf;
}

// ---------------------------------------------------------------------------

void criterion_1_variation_oracle() {
  auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    CadlagPath X = testing::random_cadlag_path(seed, 5 + seed % 8, 1 + seed % 3, 0.2, 2);
    for (double p : {1.0, 1.5, 2.0, 2.5, 3.0})
      worst = std::max(worst, std::abs(p_variation(X, p) - p_variation_brute(X, p)));
  }
  double secs = elapsed_s(t0);
  report(1, "p-variation DP equals brute-force enumeration", worst <= 1e-12 && secs < 10.0,
         "max |dp - brute| = " + fmt(worst) + ", " + fmt(secs) + " s");
}

double chen_residual(const RoughPath& R, std::uint64_t seed, int n_triples) {
  double worst = 0.0;
  const Index n = R.size();
  for (int k = 0; k < n_triples; ++k) {
    Index a = static_cast<Index>(rng::uniform(seed, 900, 3 * k) * n);
    Index b = static_cast<Index>(rng::uniform(seed, 900, 3 * k + 1) * n);
    Index c = static_cast<Index>(rng::uniform(seed, 900, 3 * k + 2) * n);
    Index s = std::min({a, b, c});
    Index t = std::max({a, b, c});
    Index u = a + b + c - s - t;
    if (s >= u || u >= t) continue;
    Mat lhs = R.chen(s, t);
    Mat rhs = R.chen(s, u) + R.chen(u, t) +
              (R.base().value(u) - R.base().value(s)) *
                  (R.base().value(t) - R.base().value(u)).transpose();
    worst = std::max(worst, (lhs - rhs).norm() / (1.0 + lhs.norm() + rhs.norm()));
  }
  return worst;
}

void criterion_2_chen() {
  double worst = 0.0;
  {
    Partition G = Partition::dyadic(10, 1.0);
    CadlagPath W = sample_brownian(41, Mat::Identity(2, 2), G);
    PartitionSequence S = PartitionSequence::dyadic(4, 10, 1.0);
    CanonicalLift lift = canonical_lift(W, S, 2.5, 1e9);
    worst = std::max(worst, chen_residual(lift.rough, 11, 200));
  }
  {
    CadlagPath X = testing::random_cadlag_path(42, 200, 2);
    Partition G = X.grid();
    std::vector<double> sub;
    for (Index i = 0; i < G.size(); i += 7) sub.push_back(G[i]);
    if (sub.back() != G.horizon()) sub.push_back(G.horizon());
    Partition P(std::move(sub));
    CadlagPath Xn = discretize_piecewise_constant(X, P);
    worst = std::max(worst, chen_residual(lift_piecewise_constant(Xn, P, 2.5), 12, 200));
  }
  {
    Partition G = Partition::dyadic(10, 1.0);
    EtaSpec es;
    es.dim = 2;
    es.alpha = 0.55;
    CadlagPath eta = deterministic_eta(es, G);
    CadlagPath W = sample_brownian(43, Mat::Identity(2, 2), G);
    PartitionSequence S = PartitionSequence::dyadic(4, 9, 1.0);
    JointLift jl = joint_lift_eta_w(eta, W, S, 2.5);
    worst = std::max(worst, chen_residual(jl.lambda, 13, 200));
  }
  report(2, "Chen relation holds on every constructed lift", worst <= 1e-12,
         "max relative residual = " + fmt(worst));
}

void criterion_3_lift_defect() {
  double worst_excess = -1.0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Partition G = Partition::dyadic(9, 1.0);
    CadlagPath W = sample_brownian(100 + seed, Mat::Identity(1, 1), G);
    // add a couple of marked jumps so the cadlag branch is exercised
    Mat vals = W.values();
    std::map<Index, Vec> lefts;
    Index j1 = 3 * (G.size() / 7), j2 = 5 * (G.size() / 7);
    lefts.emplace(j1, Vec(vals.col(j1)));
    lefts.emplace(j2, Vec(vals.col(j2)));
    for (Index i = j1; i < G.size(); ++i) vals(0, i) += 0.4;
    for (Index i = j2; i < G.size(); ++i) vals(0, i) -= 0.6;
    CadlagPath X(G, vals, lefts);
    for (int n = 3; n <= 8; ++n) {
      Partition P = Partition::dyadic(n, 1.0);
      CadlagPath Xn = discretize_piecewise_constant(X, P);
      RoughPath Rn = lift_piecewise_constant(Xn, P, 2.5);
      auto I = iterated_riemann_prefix(X, P);
      double bound = 2.0 * X.sup_norm() * sup_distance(Xn, X) + 1e-12;
      for (Index s = 0; s < G.size(); s += 2) {
        for (Index t = s + 1; t < G.size(); t += 2) {
          Mat riem = I[static_cast<std::size_t>(t)] - I[static_cast<std::size_t>(s)] -
                     Xn.value(s) * (X.value(t) - X.value(s)).transpose();
          double defect = (Rn.chen(s, t) - riem).norm();
          worst_excess = std::max(worst_excess, defect - bound);
        }
      }
    }
  }
  report(3, "discretized-lift defect bounded by 2||X||_inf ||X^n - X||_inf",
         worst_excess <= 0.0, "max (defect - bound) = " + fmt(worst_excess));
}

void criterion_4_uniform_lift_bound() {
  const double p = 2.5;
  double worst_ratio = 0.0;
  auto run = [&](const CadlagPath& X, const std::function<Partition(int)>& level) {
    double prev = -1.0;
    for (int n = 4; n <= 10; ++n) {
      Partition Pn = level(n);
      CadlagPath Xn = discretize_piecewise_constant(X, Pn);
      RoughPath Rn = lift_piecewise_constant(Xn, Pn, p);
      auto xi = [&](Index i, Index j) { return Rn.chen(i, j).norm(); };
      double var = two_param_variation(xi, X.size(), p / 2.0);
      if (prev > 0.0) worst_ratio = std::max(worst_ratio, var / prev);
      prev = var;
    }
  };
  {
    Partition G = Partition::dyadic(12, 1.0);
    CadlagPath W = sample_brownian(7, Mat::Identity(1, 1), G);
    run(W, [](int n) { return Partition::dyadic(n, 1.0); });
  }
  {
    LevyCharacteristics chars;
    chars.drift = Vec::Constant(1, 0.2);
    chars.covariance = Mat::Identity(1, 1);
    JumpSpec js;
    js.kind = JumpSpec::Kind::UniformSym;
    js.intensity = 5.0;
    js.uniform_halfwidth = 0.4;
    chars.jumps.push_back(js);
    Partition G = Partition::dyadic(12, 1.0);
    LevySample s10 = sample_levy(8, chars, G, 10);
    const CadlagPath& L = s10.L;
    run(L, [&](int n) {
      LevySample sn = sample_levy(8, chars, G, n);
      return build_levy_partition(n, 1.0, sn.big_jump_times);
    });
  }
  report(4, "||Xi^n||_{p/2} level-to-level ratio stays below 1.5", worst_ratio <= 1.5,
         "max consecutive ratio = " + fmt(worst_ratio));
}

void criterion_5_exact_consistency() {
  double worst = 0.0;
  for (std::uint64_t seed : {1001, 1002}) {
    Partition G = Partition::dyadic(9, 1.0);
    CadlagPath W = sample_brownian(seed, Mat::Identity(2, 2), G);
    Partition P = Partition::dyadic(5, 1.0);
    CadlagPath Xn = discretize_piecewise_constant(W, P);
    RoughPath R = lift_piecewise_constant(Xn, P, 2.5);
    CadlagPath gam = gamma_path(P, G);
    Coefficients coeffs = make_coefficients("tanh", 2, 2, {{"b_amp", 0.4}});
    Vec y0 = Vec::Constant(2, 0.7);
    CadlagPath euler = euler_scheme(coeffs, y0, Xn, P);
    PicardResult pic = solve_rde_picard(coeffs, y0, gam, gam, R, 400, 1e-13);
    for (Index i = 0; i < G.size(); ++i)
      worst = std::max(worst, (pic.solution.y.value(i) - euler.value_at_time(G[i])).norm());
  }
  report(5, "Euler equals the rough-integral solution for piecewise-constant drivers",
         worst <= 1e-10, "max deviation = " + fmt(worst));
}

ExperimentConfig brownian_config() {
  ExperimentConfig cfg;
  cfg.T = 1.0;
  cfg.driver.family = DriverFamily::Brownian;
  cfg.driver.dim = 1;
  cfg.coeff_kind = "tanh";
  cfg.state_dim = 1;
  cfg.coeff_params = {{"amp", 1.0}, {"off", 0.2}, {"b_amp", 0.3}};
  cfg.y0 = Vec::Constant(1, 1.0);
  cfg.p = 2.25;
  cfg.p_prime = 2.75;
  cfg.q = 1.4;
  cfg.n_min = 4;
  cfg.n_max = 11;
  cfg.n_ref = 14;
  cfg.seeds.clear();
  for (std::uint64_t s = 0; s < 32; ++s) cfg.seeds.push_back(2000 + s);
  cfg.norm = ErrorNorm::PPrimeVar;
  cfg.workers = hw_workers();
  return cfg;
}

RateReport g_brownian_report;  // shared between criteria 6 and 11

void criterion_6_brownian_ladder() {
  auto t0 = std::chrono::steady_clock::now();
  ExperimentConfig cfg = brownian_config();
  g_brownian_report = run_scheme_ladder(cfg);
  double secs = elapsed_s(t0);
  const RateReport& rep = g_brownian_report;
  bool slope_ok = rep.median_slope >= rep.theoretical - 0.1;
  bool mono_ok = rep.monotone_fraction >= 0.9;
  bool time_ok = secs < 120.0;
  report(6, "Brownian ladder rate and monotonicity", slope_ok && mono_ok && time_ok,
         "median slope " + fmt(rep.median_slope) + " >= " + fmt(rep.theoretical - 0.1) +
             ", monotone fraction " + fmt(rep.monotone_fraction) + ", " + fmt(secs) + " s");
}

void criterion_7_ito_ladder() {
  ExperimentConfig cfg;
  cfg.driver.family = DriverFamily::Ito;
  cfg.driver.dim = 1;
  cfg.coeff_kind = "tanh";
  cfg.coeff_params = {{"amp", 1.0}, {"off", 0.2}, {"b_amp", 0.3}};
  cfg.y0 = Vec::Constant(1, 1.0);
  cfg.n_min = 4;
  cfg.n_max = 10;
  cfg.n_ref = 13;
  cfg.seeds.clear();
  for (std::uint64_t s = 0; s < 16; ++s) cfg.seeds.push_back(3000 + s);
  cfg.norm = ErrorNorm::ThreeVar;
  cfg.workers = hw_workers();
  RateReport rep = run_scheme_ladder(cfg);
  report(7, "Ito-process ladder in 3-variation", rep.median_slope >= 1.0 / 6.0 - 0.05,
         "median slope " + fmt(rep.median_slope) + " >= " + fmt(1.0 / 6.0 - 0.05));
}

void criterion_8_semimartingale_ladder() {
  ExperimentConfig cfg;
  cfg.driver.family = DriverFamily::Semimartingale;
  cfg.driver.dim = 1;
  // diffusion scale 0.1: the stopping-time oscillation threshold stays
  // resolvable on the master grid across all tested levels
  cfg.driver.levy.drift = Vec::Constant(1, 0.1);
  cfg.driver.levy.covariance = 0.01 * Mat::Identity(1, 1);
  JumpSpec js;
  js.kind = JumpSpec::Kind::UniformSym;
  js.intensity = 5.0;
  js.uniform_halfwidth = 0.2;
  cfg.driver.levy.jumps.push_back(js);
  cfg.coeff_kind = "tanh";
  cfg.coeff_params = {{"amp", 1.0}, {"off", 0.2}, {"b_amp", 0.3}};
  cfg.y0 = Vec::Constant(1, 1.0);
  cfg.n_min = 4;
  cfg.n_max = 9;
  cfg.n_ref = 12;
  cfg.seeds.clear();
  for (std::uint64_t s = 0; s < 16; ++s) cfg.seeds.push_back(4000 + s);
  cfg.norm = ErrorNorm::ThreeVar;
  cfg.workers = hw_workers();
  RateReport rep = run_scheme_ladder(cfg);
  report(8, "semimartingale ladder with stopping-time partitions",
         rep.median_slope >= 1.0 / 3.0 - 0.05,
         "median slope " + fmt(rep.median_slope) + " >= " + fmt(1.0 / 3.0 - 0.05));
}

void criterion_9_jump_ablation() {
  // pure-jump-plus-drift driver: the augmented ladder converges at the
  // drift rate, so the 10%-of-coarsest bar is meaningful, while the plain
  // dyadic ladder stays pinned at the missed jump.
  ExperimentConfig cfg;
  cfg.driver.family = DriverFamily::Levy;
  cfg.driver.dim = 1;
  cfg.driver.levy.drift = Vec::Constant(1, 0.4);
  cfg.driver.levy.covariance = Mat::Zero(1, 1);
  cfg.driver.levy.forced.push_back({0.3, Vec::Constant(1, 0.4)});
  JumpSpec js;
  js.kind = JumpSpec::Kind::UniformSym;
  js.intensity = 3.0;
  js.uniform_halfwidth = 0.2;
  cfg.driver.levy.jumps.push_back(js);
  cfg.state_dim = 1;
  cfg.coeff_kind = "tanh";
  cfg.coeff_params = {{"amp", 0.0}, {"off", 0.8}, {"b_amp", 0.5}};  // sigma = 0.8, nonlinear drift
  cfg.y0 = Vec::Constant(1, 0.2);
  cfg.n_min = 4;
  cfg.n_max = 9;
  cfg.n_ref = 12;
  cfg.seeds = {5001};
  cfg.norm = ErrorNorm::Sup;
  AblationReport rep = jump_ablation(cfg);
  report(9, "jump-augmented partitions converge, plain dyadic stall at the jump",
         rep.pass,
         "aug top/coarse = " + fmt(rep.augmented_errors.back() / rep.augmented_errors.front()) +
             ", min jump error " + fmt(*std::min_element(rep.dyadic_jump_errors.begin(),
                                                         rep.dyadic_jump_errors.end())) +
             " >= floor " + fmt(rep.jump_floor));
}

void criterion_10_approximate_euler() {
  // (a) vanishing small-jump residual
  ExperimentConfig cfg;
  cfg.driver.family = DriverFamily::Levy;
  cfg.driver.dim = 1;
  cfg.driver.levy.drift = Vec::Constant(1, 0.1);
  cfg.driver.levy.covariance = Mat::Identity(1, 1);
  JumpSpec js;
  js.kind = JumpSpec::Kind::UniformSym;
  js.intensity = 8.0;
  js.uniform_halfwidth = 0.4;
  cfg.driver.levy.jumps.push_back(js);
  cfg.coeff_kind = "tanh";
  cfg.coeff_params = {{"amp", 1.0}, {"off", 0.2}, {"b_amp", 0.3}};
  cfg.y0 = Vec::Constant(1, 1.0);
  cfg.n_min = 4;
  cfg.n_max = 9;
  cfg.n_ref = 12;
  cfg.seeds = {6001, 6002, 6003, 6004, 6005};
  cfg.workers = hw_workers();
  ApproxReport levy_rep = run_approx_ladder(cfg);

  // (b) fixed nonzero phi family across scales; sup norm so the plateau is
  // the phi effect rather than the discretization floor of the variation
  // seminorm
  ExperimentConfig cfg2 = brownian_config();
  cfg2.seeds = {6101, 6102, 6103, 6104};
  cfg2.n_min = 4;
  cfg2.n_max = 9;
  cfg2.n_ref = 12;
  cfg2.norm = ErrorNorm::Sup;
  cfg2.phi.path.kind = EtaKind::Linear;
  cfg2.phi.path.alpha = 1.0;
  cfg2.phi.path.scale = 0.25;
  cfg2.phi.scales = {1.0, 0.5, 0.25};
  cfg2.workers = hw_workers();
  ApproxReport phi_rep = run_approx_ladder(cfg2);

  report(10, "approximate Euler: psi^n -> 0 tracks the exact ladder; fixed phi plateaus",
         levy_rep.pass && phi_rep.pass,
         "levy top-error ratio " + fmt(levy_rep.median_top_ratio) + " <= 2, phi K spread <= 3 and plateau bounded: " +
             (phi_rep.pass ? "yes" : "no"));
}

void criterion_11_error_decomposition() {
  const RateReport& rep = g_brownian_report;
  if (rep.per_seed.empty()) {
    report(11, "error decomposition with a stable fitted constant", false,
           "brownian ladder unavailable");
    return;
  }
  int ok = 0;
  double worst_spread = 0.0;
  for (const SeedRateReport& s : rep.per_seed) {
    bool bounded = true;
    for (const LevelRecord& r : s.levels)
      if (r.error > s.k_fit * (r.mesh_term + r.path_term + r.integral_term) * (1.0 + 1e-12))
        bounded = false;
    if (bounded && s.k_spread <= 3.0) ++ok;
    worst_spread = std::max(worst_spread, s.k_spread);
  }
  double frac = static_cast<double>(ok) / static_cast<double>(rep.per_seed.size());
  report(11, "error decomposition with a stable fitted constant", frac >= 0.9,
         fmt(100.0 * frac) + "% of seeds bounded with K spread <= 3 (max spread " +
             fmt(worst_spread) + ")");
}

void criterion_12_quadratic_covariation() {
  const double alpha = 0.45;
  Partition G = Partition::dyadic(13, 1.0);
  EtaSpec es;
  es.kind = EtaKind::Weierstrass;
  es.dim = 4;
  es.alpha = alpha;
  CadlagPath eta = deterministic_eta(es, G);
  PartitionSequence S = PartitionSequence::dyadic(4, 12, 1.0);
  int ok = 0;
  const int n_seeds = 32;
  for (int s = 0; s < n_seeds; ++s) {
    CadlagPath W = sample_brownian(7000 + static_cast<std::uint64_t>(s), Mat::Identity(4, 4), G);
    JointLift jl = joint_lift_eta_w(eta, W, S, 2.5);
    if (jl.fitted_decay_slope >= alpha - 0.1) ++ok;
  }
  double frac = static_cast<double>(ok) / n_seeds;
  report(12, "quadratic covariation of (eta, W) decays at the Hoelder rate", frac >= 0.9,
         fmt(100.0 * frac) + "% of seeds with slope >= " + fmt(alpha - 0.1));
}

void criterion_13_young_closed_forms() {
  Partition G = Partition::dyadic(12, 1.0);
  const double delta = G.mesh();
  CadlagPath t_path = scalar_path(G, [](double t) { return t; });
  double e1 = std::abs(young_integral(t_path, t_path, 1.0).value(0, 0) - (0.5 - 0.5 * delta));
  double e1_limit = std::abs(young_integral(t_path, t_path, 1.0).value(0, 0) - 0.5);
  CadlagPath W = sample_brownian(77, Mat::Identity(2, 2), G);
  CadlagPath one = constant_path(G, Vec::Constant(1, 1.0));
  double e2 = (young_integral(one, W, 1.0).value.transpose() - (W.value(W.size() - 1) - W.value(0)))
                  .norm();
  CadlagPath step = scalar_path(G, [](double t) { return t >= 0.5 ? 1.0 : 0.0; });
  double e3 = std::abs(young_integral(step, t_path, 1.0).value(0, 0) - 0.5);
  bool pass = e1 <= 1e-6 && e1_limit <= delta && e2 <= 1e-6 && e3 <= 1e-6;
  report(13, "Young integrals match closed forms",
         pass, "int t dt err " + fmt(e1) + ", int 1 dX err " + fmt(e2) + ", step err " + fmt(e3));
}

void criterion_14_picard_oracle() {
  bool all = true;
  std::string detail;
  // linear scalar coefficients on a Brownian driver
  {
    Partition G = Partition::dyadic(12, 1.0);
    CadlagPath W = sample_brownian(606, Mat::Identity(1, 1), G);
    PartitionSequence S = PartitionSequence::dyadic(8, 12, 1.0);
    Coefficients lin = make_coefficients("linear", 1, 1, {{"sigma_lin", 0.8}});
    Vec y0 = Vec::Constant(1, 1.0);
    ReferenceSolution ref = solve_rde_reference(lin, y0, W, S, 2.5);
    CanonicalLift lift = canonical_lift(W, S, 2.5, 1e9);
    Partition Pc = Partition::dyadic(10, 1.0);
    RoughPath Rc = restrict_rough(lift.rough, Pc);
    CadlagPath gam = scalar_path(Pc, [](double t) { return t; });
    PicardResult pic = solve_rde_picard(lin, y0, gam, gam, Rc);
    double dist = 0.0;
    for (Index i = 0; i < Pc.size(); ++i)
      dist = std::max(dist, (pic.solution.y.value(i) - ref.y.value_at_time(Pc[i])).norm());
    bool ok = dist <= 5.0 * ref.tolerance;
    all = all && ok;
    detail += "linear dist " + fmt(dist) + " vs 5x tol " + fmt(5.0 * ref.tolerance);
  }
  // 2-d rotation coefficients
  {
    Partition G = Partition::dyadic(12, 1.0);
    CadlagPath W = sample_brownian(607, Mat::Identity(1, 1), G);
    PartitionSequence S = PartitionSequence::dyadic(8, 12, 1.0);
    Coefficients rot = make_coefficients("rotation", 2, 1, {{"omega", 1.0}});
    Vec y0(2);
    y0 << 1.0, 0.0;
    ReferenceSolution ref = solve_rde_reference(rot, y0, W, S, 2.5);
    CanonicalLift lift = canonical_lift(W, S, 2.5, 1e9);
    Partition Pc = Partition::dyadic(10, 1.0);
    RoughPath Rc = restrict_rough(lift.rough, Pc);
    CadlagPath gam = scalar_path(Pc, [](double t) { return t; });
    PicardResult pic = solve_rde_picard(rot, y0, gam, gam, Rc);
    double dist = 0.0;
    for (Index i = 0; i < Pc.size(); ++i)
      dist = std::max(dist, (pic.solution.y.value(i) - ref.y.value_at_time(Pc[i])).norm());
    bool ok = dist <= 5.0 * ref.tolerance;
    all = all && ok;
    detail += "; rotation dist " + fmt(dist) + " vs 5x tol " + fmt(5.0 * ref.tolerance);
  }
  report(14, "Picard fixed point agrees with the fine-Euler reference", all, detail);
}

void criterion_15_fbm_covariance() {
  Partition G = Partition::equidistant(128, 1.0);
  const int n_seeds = 1000;
  const std::vector<std::pair<double, double>> probes = {
      {0.25, 0.25}, {0.25, 0.75}, {0.5, 0.5}, {0.5, 1.0}, {0.125, 0.875}};
  bool all = true;
  std::string detail;
  for (double H : {0.6, 0.75, 0.9}) {
    FbmSpec spec;
    spec.hurst = H;
    std::vector<double> sums(probes.size(), 0.0), sumsq(probes.size(), 0.0);
    for (int s = 0; s < n_seeds; ++s) {
      CadlagPath X = sample_fbm(8000 + static_cast<std::uint64_t>(s), spec, G);
      for (std::size_t k = 0; k < probes.size(); ++k) {
        double prod = X.value_at_time(probes[k].first)(0) * X.value_at_time(probes[k].second)(0);
        sums[k] += prod;
        sumsq[k] += prod * prod;
      }
    }
    int ok = 0;
    for (std::size_t k = 0; k < probes.size(); ++k) {
      double mean = sums[k] / n_seeds;
      double se = std::sqrt((sumsq[k] / n_seeds - mean * mean) / n_seeds);
      double s = probes[k].first, t = probes[k].second;
      double exact =
          0.5 * (std::pow(s, 2 * H) + std::pow(t, 2 * H) - std::pow(std::abs(t - s), 2 * H));
      if (std::abs(mean - exact) <= 3.0 * se) ++ok;
    }
    all = all && ok == static_cast<int>(probes.size());
    detail += "H=" + fmt(H) + ": " + std::to_string(ok) + "/5 ";
  }
  report(15, "fBm sampler covariance within 3 standard errors", all, detail);
}

}  // namespace

int main() {
  auto t0 = std::chrono::steady_clock::now();
  criterion_1_variation_oracle();
  criterion_2_chen();
  criterion_3_lift_defect();
  criterion_4_uniform_lift_bound();
  criterion_5_exact_consistency();
  criterion_6_brownian_ladder();
  criterion_7_ito_ladder();
  criterion_8_semimartingale_ladder();
  criterion_9_jump_ablation();
  criterion_10_approximate_euler();
  criterion_11_error_decomposition();
  criterion_12_quadratic_covariation();
  criterion_13_young_closed_forms();
  criterion_14_picard_oracle();
  criterion_15_fbm_covariance();
  std::printf("%d/15 criteria passed in %.1f s\n", 15 - g_failures, elapsed_s(t0));
  return g_failures > 0 ? 2 : 0;
}

#include "roughlab/ladder.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <locale>
#include <mutex>
#include <ostream>

#include "json.hpp"
#include "roughlab/variation.hpp"

namespace roughlab {

std::string to_string(DriverFamily f) {
  switch (f) {
    case DriverFamily::Brownian: return "brownian";
    case DriverFamily::Ito: return "ito";
    case DriverFamily::Levy: return "levy";
    case DriverFamily::Semimartingale: return "semimartingale";
    case DriverFamily::Fbm: return "fbm";
    case DriverFamily::Eta: return "eta";
  }
  return "brownian";
}

DriverFamily driver_family_from_string(const std::string& s) {
  if (s == "brownian") return DriverFamily::Brownian;
  if (s == "ito") return DriverFamily::Ito;
  if (s == "levy") return DriverFamily::Levy;
  if (s == "semimartingale") return DriverFamily::Semimartingale;
  if (s == "fbm") return DriverFamily::Fbm;
  if (s == "eta") return DriverFamily::Eta;
  throw std::invalid_argument("unknown driver family: " + s);
}

std::string to_string(ErrorNorm n) {
  switch (n) {
    case ErrorNorm::PPrimeVar: return "p_prime_var";
    case ErrorNorm::Sup: return "sup";
    case ErrorNorm::ThreeVar: return "three_var";
  }
  return "p_prime_var";
}

ErrorNorm error_norm_from_string(const std::string& s) {
  if (s == "p_prime_var") return ErrorNorm::PPrimeVar;
  if (s == "sup") return ErrorNorm::Sup;
  if (s == "three_var") return ErrorNorm::ThreeVar;
  throw std::invalid_argument("unknown error norm: " + s);
}

void ExperimentConfig::validate() const {
  require(T > 0.0, "config: T must be positive");
  require(p > 2.0 && p < 3.0, "config: p must lie in (2, 3)");
  require(p_prime > p && p_prime < 3.0, "config: p' must lie in (p, 3)");
  require(q > 1.0 && q < 2.0, "config: q must lie in (1, 2)");
  require(q_prime > 1.0 && q_prime < 2.0, "config: q' must lie in (1, 2)");
  require(n_min >= 1 && n_max >= n_min, "config: invalid level range");
  require(n_ref >= n_max + 3, "config: reference level must be at least n_max + 3");
  require(!seeds.empty(), "config: need at least one seed");
  require(y0.size() == state_dim, "config: y0 dimension mismatch");
}

double theoretical_exponent(const ExperimentConfig& cfg) {
  if (!std::isnan(cfg.theoretical_override)) return cfg.theoretical_override;
  const double p = cfg.p, pp = cfg.p_prime, q = cfg.q, qp = cfg.q_prime;
  switch (cfg.driver.family) {
    case DriverFamily::Brownian: {
      double beta = cfg.beta > 0.0 ? cfg.beta : 1.0 - 1.0 / p + 0.01;
      return std::min(1.0 - 1.0 / q, (2.0 / p - beta) * (1.0 - p / pp));
    }
    case DriverFamily::Ito:
      return 1.0 / 6.0 - cfg.epsilon;
    case DriverFamily::Semimartingale:
      return 1.0 / 3.0 - cfg.epsilon;
    case DriverFamily::Levy: {
      double delta = cfg.delta > 0.0 ? cfg.delta : (1.0 - q / 2.0) - 0.05;
      return std::min({1.0 - 1.0 / qp, delta * (1.0 - q / qp) * (1.0 - p / pp),
                       (1.0 / p - 1.0 / pp) * (1.0 - p / pp)});
    }
    default:
      throw std::invalid_argument("no theoretical exponent for this driver family; set exponents.theoretical");
  }
}

RateFit fit_rate(const std::vector<int>& levels, const std::vector<double>& errors) {
  require(levels.size() == errors.size(), "fit_rate: level/error length mismatch");
  std::vector<double> xs, ys;
  int dropped = 0;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (errors[i] > 0.0) {
      xs.push_back(static_cast<double>(levels[i]));
      ys.push_back(-std::log2(errors[i]));
    } else {
      ++dropped;
    }
  }
  require(xs.size() >= 2, "fit_rate: fewer than 2 usable (positive-error) points");
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) { mx += xs[i]; my += ys[i]; }
  mx /= static_cast<double>(xs.size());
  my /= static_cast<double>(ys.size());
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  RateFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / static_cast<double>(xs.size()));
  fit.used = static_cast<int>(xs.size());
  fit.dropped = dropped;
  return fit;
}

namespace {

// Left limit of the held (cadlag step) extension of a grid path at time t.
Vec held_left_value(const CadlagPath& path, double t) {
  Index i = path.grid().floor_index(t);
  if (std::abs(path.time(i) - t) <= kTimeTol) {
    if (path.has_jump_at(i)) return path.left_value(i);
    return i > 0 ? Vec(path.value(i - 1)) : Vec(path.value(0));
  }
  return path.value(i);
}

}  // namespace

double scheme_error_norm(const CadlagPath& y_scheme, const CadlagPath& y_ref, ErrorNorm norm,
                         double p_prime, const Partition& comparison) {
  Mat diff(y_scheme.dim(), comparison.size());
  std::map<Index, Vec> lefts;
  for (Index i = 0; i < comparison.size(); ++i) {
    const double t = comparison[i];
    diff.col(i) = y_scheme.value_at_time(t) - y_ref.value_at_time(t);
    // the scheme path jumps at its partition points; the error just before
    // such a point is part of the sup/variation functional
    Index si = y_scheme.grid().find(t);
    if (i > 0 && si > 0 && y_scheme.has_jump_at(si))
      lefts.emplace(i, Vec(y_scheme.left_value(si) - held_left_value(y_ref, t)));
  }
  if (norm == ErrorNorm::Sup) {
    double m = 0.0;
    for (Index i = 0; i < comparison.size(); ++i) m = std::max(m, diff.col(i).norm());
    for (const auto& [idx, v] : lefts) m = std::max(m, v.norm());
    return m;
  }
  CadlagPath dpath(comparison, std::move(diff), std::move(lefts));
  return p_variation(dpath, norm == ErrorNorm::ThreeVar ? 3.0 : p_prime);
}

double scheme_error_norm(const CadlagPath& y_scheme, const CadlagPath& y_ref, ErrorNorm norm,
                         double p_prime) {
  return scheme_error_norm(y_scheme, y_ref, norm, p_prime, y_scheme.grid());
}

namespace {

struct LadderDriver {
  CadlagPath X;
  std::function<Partition(int)> level_partition;
  std::function<CadlagPath(int)> approx_driver;  // Levy only: level-n simulatable signal
  std::function<CadlagPath(int)> psi_path;       // Levy only: x_hat - L at level n
};

ItoSpec make_ito_spec(const DriverSpec& d) {
  ItoSpec spec;
  spec.x0 = Vec::Zero(d.dim);
  spec.brownian_dim = d.dim;
  const double da = d.ito.drift_amp, vb = d.ito.vol_base, va = d.ito.vol_amp;
  const Index dim = d.dim;
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
  return spec;
}

LadderDriver make_driver(const ExperimentConfig& cfg, std::uint64_t seed) {
  const int master_n = cfg.driver.family == DriverFamily::Semimartingale ? cfg.n_ref + 2 : cfg.n_ref;
  Partition grid0 = Partition::dyadic(master_n, cfg.T);
  LadderDriver drv;
  const double T = cfg.T;
  switch (cfg.driver.family) {
    case DriverFamily::Brownian: {
      Mat cov = cfg.driver.cov_scale * Mat::Identity(cfg.driver.dim, cfg.driver.dim);
      drv.X = sample_brownian(seed, cov, grid0);
      drv.level_partition = [T](int n) { return Partition::dyadic(n, T); };
      return drv;
    }
    case DriverFamily::Ito: {
      drv.X = sample_ito(seed, make_ito_spec(cfg.driver), grid0).x;
      drv.level_partition = [T](int n) { return Partition::dyadic(n, T); };
      return drv;
    }
    case DriverFamily::Levy: {
      const LevyCharacteristics chars = cfg.driver.levy;
      const PsiPolicy policy = cfg.psi_policy;
      drv.X = sample_levy(seed, chars, grid0, cfg.n_max, policy).L;
      drv.level_partition = [seed, chars, grid0, T, policy](int n) {
        LevySample s = sample_levy(seed, chars, grid0, n, policy);
        return build_levy_partition(n, T, s.big_jump_times);
      };
      drv.approx_driver = [seed, chars, grid0, policy](int n) {
        return sample_levy(seed, chars, grid0, n, policy).x_hat;
      };
      drv.psi_path = [seed, chars, grid0, policy](int n) {
        return sample_levy(seed, chars, grid0, n, policy).psi;
      };
      return drv;
    }
    case DriverFamily::Semimartingale: {
      drv.X = sample_levy(seed, cfg.driver.levy, grid0, cfg.n_max, cfg.psi_policy).L;
      CadlagPath X = drv.X;
      drv.level_partition = [X](int n) { return build_stopping_partition(X, n); };
      return drv;
    }
    default:
      throw std::invalid_argument("driver family not supported by the ladder");
  }
}

ReferenceSolution make_reference(const ExperimentConfig& cfg, const Coefficients& coeffs,
                                 const LadderDriver& drv) {
  std::vector<Partition> refs;
  for (int n = cfg.n_ref - 2; n <= cfg.n_ref; ++n) refs.push_back(drv.level_partition(n));
  double threshold = refs.back().mesh() + kTimeTol;
  PartitionSequence S(std::move(refs), PartitionFamily::Custom, threshold);
  return solve_rde_reference(coeffs, cfg.y0, drv.X, S, cfg.p);
}

double sup_prefix_diff(const std::vector<Mat>& a, const std::vector<Mat>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, (a[i] - b[i]).norm());
  return m;
}

// Fixed fine comparison grid (two levels below the top ladder level, capped
// below the reference), joined with the level partition so jump and stopping
// times stay visible.
Partition comparison_grid(const ExperimentConfig& cfg, const Partition& Pn) {
  int n_cmp = std::min(cfg.n_max + 1, cfg.n_ref - 1);
  return union_of(Partition::dyadic(n_cmp, cfg.T), Pn);
}

SeedRateReport run_seed(const ExperimentConfig& cfg, const Coefficients& coeffs,
                        std::uint64_t seed) {
  SeedRateReport rep;
  rep.seed = seed;
  LadderDriver drv = make_driver(cfg, seed);
  ReferenceSolution ref = make_reference(cfg, coeffs, drv);
  std::vector<Mat> I_exact = iterated_riemann_prefix(drv.X, drv.X.grid());

  const double term_exp = 1.0 - cfg.p / cfg.p_prime;
  for (int n = cfg.n_min; n <= cfg.n_max; ++n) {
    Partition Pn = drv.level_partition(n);
    CadlagPath yn = euler_scheme(coeffs, cfg.y0, drv.X, Pn);
    LevelRecord rec;
    rec.level = n;
    rec.error = scheme_error_norm(yn, ref.y, cfg.norm, cfg.p_prime, comparison_grid(cfg, Pn));
    rec.mesh_term = std::pow(Pn.mesh(), 1.0 - 1.0 / cfg.q);
    CadlagPath xn = discretize_piecewise_constant(drv.X, Pn);
    rec.path_term = std::pow(sup_distance(xn, drv.X), term_exp);
    std::vector<Mat> I_n = iterated_riemann_prefix(drv.X, Pn);
    rec.integral_term = std::pow(sup_prefix_diff(I_n, I_exact), term_exp);
    rep.levels.push_back(rec);
  }

  std::vector<int> ls;
  std::vector<double> errs;
  for (const LevelRecord& r : rep.levels) {
    ls.push_back(r.level);
    errs.push_back(r.error);
  }
  rep.fit = fit_rate(ls, errs);
  rep.monotone = true;
  for (std::size_t i = 0; i + 1 < errs.size(); ++i)
    if (errs[i + 1] > errs[i] * (1.0 + 1e-12)) rep.monotone = false;
  double kmin = std::numeric_limits<double>::infinity(), kmax = 0.0;
  for (const LevelRecord& r : rep.levels) {
    double denom = r.mesh_term + r.path_term + r.integral_term;
    if (denom <= 0.0 || r.error <= 0.0) continue;
    double ratio = r.error / denom;
    kmin = std::min(kmin, ratio);
    kmax = std::max(kmax, ratio);
  }
  rep.k_fit = kmax;
  rep.k_spread = (kmin > 0.0 && std::isfinite(kmin)) ? kmax / kmin : 0.0;
  return rep;
}

double median(std::vector<double> v) {
  require(!v.empty(), "median of empty set");
  std::sort(v.begin(), v.end());
  std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

template <typename Fn>
auto parallel_over_seeds(const std::vector<std::uint64_t>& seeds, int workers, Fn fn)
    -> std::vector<decltype(fn(std::uint64_t{}))> {
  using R = decltype(fn(std::uint64_t{}));
  std::vector<R> out(seeds.size());
  if (workers <= 1 || seeds.size() <= 1) {
    for (std::size_t i = 0; i < seeds.size(); ++i) out[i] = fn(seeds[i]);
    return out;
  }
  std::size_t next = 0;
  std::mutex mu;
  auto worker = [&]() {
    while (true) {
      std::size_t i;
      {
        std::lock_guard<std::mutex> lock(mu);
        if (next >= seeds.size()) return;
        i = next++;
      }
      out[i] = fn(seeds[i]);
    }
  };
  std::vector<std::future<void>> futs;
  int nw = std::min<int>(workers, static_cast<int>(seeds.size()));
  for (int w = 0; w < nw; ++w) futs.push_back(std::async(std::launch::async, worker));
  for (auto& f : futs) f.get();
  return out;
}

}  // namespace

RateReport run_scheme_ladder(const ExperimentConfig& cfg) {
  cfg.validate();
  Coefficients coeffs =
      make_coefficients(cfg.coeff_kind, cfg.state_dim, cfg.driver.dim, cfg.coeff_params);
  RateReport rep;
  rep.theoretical = theoretical_exponent(cfg);
  rep.per_seed = parallel_over_seeds(cfg.seeds, cfg.workers, [&](std::uint64_t seed) {
    try {
      return run_seed(cfg, coeffs, seed);
    } catch (const std::exception& e) {
      SeedRateReport failed;
      failed.seed = seed;
      failed.error = e.what();
      return failed;
    }
  });
  std::sort(rep.per_seed.begin(), rep.per_seed.end(),
            [](const SeedRateReport& a, const SeedRateReport& b) { return a.seed < b.seed; });
  for (int n = cfg.n_min; n <= cfg.n_max; ++n) rep.levels.push_back(n);
  std::size_t ok_count = 0;
  for (const SeedRateReport& s : rep.per_seed)
    if (!s.failed()) ++ok_count;
  require(ok_count > 0, "every seed task failed: " + rep.per_seed.front().error);
  for (std::size_t li = 0; li < rep.levels.size(); ++li) {
    std::vector<double> errs;
    for (const SeedRateReport& s : rep.per_seed)
      if (!s.failed()) errs.push_back(s.levels[li].error);
    rep.median_error.push_back(median(errs));
  }
  std::vector<double> slopes;
  double mono = 0.0;
  for (const SeedRateReport& s : rep.per_seed) {
    if (s.failed()) continue;
    slopes.push_back(s.fit.slope);
    if (s.monotone) mono += 1.0;
  }
  rep.median_slope = median(slopes);
  rep.monotone_fraction = mono / static_cast<double>(ok_count);
  rep.pass = rep.median_slope >= rep.theoretical - 0.1 && ok_count == rep.per_seed.size();
  return rep;
}

ApproxReport run_approx_ladder(const ExperimentConfig& cfg) {
  cfg.validate();
  Coefficients coeffs =
      make_coefficients(cfg.coeff_kind, cfg.state_dim, cfg.driver.dim, cfg.coeff_params);
  ApproxReport rep;
  rep.levy_mode = cfg.driver.family == DriverFamily::Levy;

  rep.per_seed = parallel_over_seeds(cfg.seeds, cfg.workers, [&](std::uint64_t seed) {
    ApproxSeedReport srep;
    srep.seed = seed;
    LadderDriver drv = make_driver(cfg, seed);
    ReferenceSolution ref = make_reference(cfg, coeffs, drv);

    // Exact-increment ladder on the same seed.
    for (int n = cfg.n_min; n <= cfg.n_max; ++n) {
      Partition Pn = drv.level_partition(n);
      CadlagPath yn = euler_scheme(coeffs, cfg.y0, drv.X, Pn);
      srep.exact_errors.push_back(
          scheme_error_norm(yn, ref.y, cfg.norm, cfg.p_prime, comparison_grid(cfg, Pn)));
    }

    Partition var_grid = drv.level_partition(cfg.n_max);
    double x_pvar = p_variation(restrict_to(drv.X, var_grid), cfg.p);

    if (rep.levy_mode) {
      ApproxScaleReport sc;
      sc.scale = 1.0;
      for (int n = cfg.n_min; n <= cfg.n_max; ++n) {
        sc.levels.push_back(n);
        CadlagPath xhat = drv.approx_driver(n);
        Partition Pn = drv.level_partition(n);
        CadlagPath yn = euler_scheme(coeffs, cfg.y0, xhat, Pn);
        sc.errors.push_back(scheme_error_norm(yn, ref.y, cfg.norm, cfg.p_prime, comparison_grid(cfg, Pn)));
        CadlagPath psi = drv.psi_path(n);
        double psi_q = p_variation(restrict_to(psi, var_grid), cfg.q);
        sc.psi_q_norms.push_back(psi_q);
      }
      std::size_t top = sc.errors.size() >= 3 ? sc.errors.size() - 3 : 0;
      for (std::size_t i = top; i < sc.errors.size(); ++i)
        sc.limsup_estimate = std::max(sc.limsup_estimate, sc.errors[i]);
      double psi_q_top = sc.psi_q_norms.back();
      sc.bound = (1.0 + x_pvar + psi_q_top) * psi_q_top;
      sc.k_ratio = sc.bound > 0.0 ? sc.limsup_estimate / sc.bound : 0.0;
      srep.scales.push_back(std::move(sc));
      srep.k_fit = srep.scales[0].k_ratio;
      srep.k_spread = 1.0;
      return srep;
    }

    CadlagPath phi0 = deterministic_eta(cfg.phi.path, drv.X.grid());
    require(phi0.dim() == drv.X.dim(), "phi dimension must match the driver");
    double phi0_q = p_variation(restrict_to(phi0, var_grid), cfg.q);
    for (double s : cfg.phi.scales) {
      ApproxScaleReport sc;
      sc.scale = s;
      CadlagPath phis(phi0.grid(), Mat(s * phi0.values()));
      for (int n = cfg.n_min; n <= cfg.n_max; ++n) {
        sc.levels.push_back(n);
        Partition Pn = drv.level_partition(n);
        CadlagPath yn = approximate_euler(coeffs, cfg.y0, drv.X, phis, Pn).y;
        sc.errors.push_back(scheme_error_norm(yn, ref.y, cfg.norm, cfg.p_prime, comparison_grid(cfg, Pn)));
      }
      std::size_t top = sc.errors.size() >= 3 ? sc.errors.size() - 3 : 0;
      for (std::size_t i = top; i < sc.errors.size(); ++i)
        sc.limsup_estimate = std::max(sc.limsup_estimate, sc.errors[i]);
      double phi_q = s * phi0_q;
      sc.bound = (1.0 + x_pvar + phi_q) * phi_q;
      sc.k_ratio = sc.bound > 0.0 ? sc.limsup_estimate / sc.bound : 0.0;
      srep.scales.push_back(std::move(sc));
    }
    double kmin = std::numeric_limits<double>::infinity(), kmax = 0.0;
    for (const ApproxScaleReport& sc : srep.scales) {
      if (sc.k_ratio <= 0.0) continue;
      kmin = std::min(kmin, sc.k_ratio);
      kmax = std::max(kmax, sc.k_ratio);
    }
    srep.k_fit = kmax;
    srep.k_spread = kmin > 0.0 && std::isfinite(kmin) ? kmax / kmin : 0.0;
    return srep;
  });

  std::sort(rep.per_seed.begin(), rep.per_seed.end(),
            [](const ApproxSeedReport& a, const ApproxSeedReport& b) { return a.seed < b.seed; });
  std::vector<double> kfits;
  for (const ApproxSeedReport& s : rep.per_seed) kfits.push_back(s.k_fit);
  rep.median_k_fit = median(kfits);
  if (rep.levy_mode) {
    std::vector<double> ratios;
    for (const ApproxSeedReport& s : rep.per_seed) {
      double exact_top = s.exact_errors.back();
      double approx_top = s.scales[0].errors.back();
      ratios.push_back(exact_top > 0.0 ? approx_top / exact_top : 0.0);
    }
    rep.median_top_ratio = median(ratios);
    rep.pass = rep.median_top_ratio <= 2.0;
  } else {
    bool ok = true;
    for (const ApproxSeedReport& s : rep.per_seed) {
      if (s.k_spread > 3.0 || s.k_spread <= 0.0) ok = false;
      for (const ApproxScaleReport& sc : s.scales)
        if (!(sc.limsup_estimate > 0.0 && sc.limsup_estimate <= s.k_fit * sc.bound * (1.0 + 1e-9)))
          ok = false;
    }
    rep.pass = ok;
  }
  return rep;
}

AblationReport jump_ablation(const ExperimentConfig& cfg) {
  cfg.validate();
  require(cfg.driver.family == DriverFamily::Levy, "jump ablation needs a Levy driver");
  Coefficients coeffs =
      make_coefficients(cfg.coeff_kind, cfg.state_dim, cfg.driver.dim, cfg.coeff_params);
  const std::uint64_t seed = cfg.seeds.front();
  LadderDriver drv = make_driver(cfg, seed);
  ReferenceSolution ref = make_reference(cfg, coeffs, drv);

  // Qualifying jump: above the top-level threshold and off the dyadic grid.
  AblationReport rep;
  const double threshold = std::ldexp(1.0, -cfg.n_max);
  const CadlagPath& X = drv.X;
  double best_size = 0.0;
  for (const auto& [idx, left] : X.marked_jumps()) {
    const double t = X.time(idx);
    const double sz = (X.value(idx) - left).norm();
    double cells = t * std::ldexp(1.0, cfg.n_max) / cfg.T;
    bool dyadic = std::abs(cells - std::round(cells)) <= 1e-9;
    if (sz >= threshold && !dyadic && sz > best_size) {
      best_size = sz;
      rep.jump_time = t;
      rep.jump_size_norm = sz;
    }
  }
  require(best_size > 0.0,
          "no jump above the top-level threshold at a non-dyadic time; "
          "add one via driver.levy.forced or choose another seed");

  Index jidx = X.grid().find(rep.jump_time);
  Vec dl = X.value(jidx) - X.left_value(jidx);
  Vec y_pre = ref.y.value_at_time(X.time(jidx - 1));
  rep.jump_floor = 0.5 * (coeffs.sigma(rep.jump_time, y_pre) * dl).norm();

  for (int n = cfg.n_min; n <= cfg.n_max; ++n) {
    rep.levels.push_back(n);
    Partition Pn = drv.level_partition(n);
    Partition cmp = comparison_grid(cfg, Pn);
    CadlagPath y_aug = euler_scheme(coeffs, cfg.y0, X, Pn);
    rep.augmented_errors.push_back(scheme_error_norm(y_aug, ref.y, cfg.norm, cfg.p_prime, cmp));
    CadlagPath y_dy = euler_scheme(coeffs, cfg.y0, X, Partition::dyadic(n, cfg.T));
    rep.dyadic_errors.push_back(scheme_error_norm(y_dy, ref.y, cfg.norm, cfg.p_prime, cmp));
    rep.dyadic_jump_errors.push_back(
        (y_dy.value_at_time(rep.jump_time) - ref.y.value_at_time(rep.jump_time)).norm());
  }
  const double exact_floor = 1e-12 * (1.0 + cfg.y0.norm());
  rep.augmented_converges = rep.augmented_errors.back() < 0.1 * rep.augmented_errors.front() ||
                            rep.augmented_errors.back() <= exact_floor;
  rep.dyadic_stalls = *std::min_element(rep.dyadic_jump_errors.begin(),
                                        rep.dyadic_jump_errors.end()) >= rep.jump_floor;
  rep.pass = rep.augmented_converges && rep.dyadic_stalls;
  return rep;
}

void write_rate_csv(std::ostream& os, const RateReport& rep) {
  os.imbue(std::locale::classic());
  os.precision(17);
  os << "seed,level,error,mesh_term,path_term,integral_term\n";
  for (const SeedRateReport& s : rep.per_seed)
    for (const LevelRecord& r : s.levels)
      os << s.seed << "," << r.level << "," << r.error << "," << r.mesh_term << "," << r.path_term
         << "," << r.integral_term << "\n";
}

std::string rate_summary_json(const RateReport& rep) {
  nlohmann::json j;
  j["slope"] = rep.median_slope;
  j["theoretical"] = rep.theoretical;
  j["pass"] = rep.pass;
  j["monotone_fraction"] = rep.monotone_fraction;
  j["levels"] = rep.levels;
  j["median_error"] = rep.median_error;
  std::vector<double> slopes, kfits, kspreads;
  for (const SeedRateReport& s : rep.per_seed) {
    if (s.failed()) continue;
    slopes.push_back(s.fit.slope);
    kfits.push_back(s.k_fit);
    kspreads.push_back(s.k_spread);
  }
  j["per_seed_slope"] = slopes;
  j["per_seed_k_fit"] = kfits;
  j["per_seed_k_spread"] = kspreads;
  nlohmann::json failures = nlohmann::json::array();
  for (const SeedRateReport& s : rep.per_seed)
    if (s.failed()) failures.push_back({{"seed", s.seed}, {"error", s.error}});
  j["failed_seeds"] = failures;
  return j.dump(2);
}

void write_plot_data(std::ostream& os, const RateReport& rep) {
  os.imbue(std::locale::classic());
  os.precision(17);
  for (std::size_t i = 0; i < rep.levels.size(); ++i)
    os << rep.levels[i] << " " << std::log2(rep.median_error[i]) << "\n";
}

void write_approx_csv(std::ostream& os, const ApproxReport& rep) {
  os.imbue(std::locale::classic());
  os.precision(17);
  os << "seed,scale,level,error,psi_q\n";
  for (const ApproxSeedReport& s : rep.per_seed)
    for (const ApproxScaleReport& sc : s.scales)
      for (std::size_t i = 0; i < sc.levels.size(); ++i)
        os << s.seed << "," << sc.scale << "," << sc.levels[i] << "," << sc.errors[i] << ","
           << (i < sc.psi_q_norms.size() ? sc.psi_q_norms[i] : 0.0) << "\n";
}

std::string approx_summary_json(const ApproxReport& rep) {
  nlohmann::json j;
  j["levy_mode"] = rep.levy_mode;
  j["median_k_fit"] = rep.median_k_fit;
  j["median_top_ratio"] = rep.median_top_ratio;
  j["pass"] = rep.pass;
  nlohmann::json seeds = nlohmann::json::array();
  for (const ApproxSeedReport& s : rep.per_seed) {
    nlohmann::json js;
    js["seed"] = s.seed;
    js["k_fit"] = s.k_fit;
    js["k_spread"] = s.k_spread;
    js["exact_errors"] = s.exact_errors;
    nlohmann::json scales = nlohmann::json::array();
    for (const ApproxScaleReport& sc : s.scales) {
      nlohmann::json jsc;
      jsc["scale"] = sc.scale;
      jsc["errors"] = sc.errors;
      jsc["limsup_estimate"] = sc.limsup_estimate;
      jsc["bound"] = sc.bound;
      jsc["k_ratio"] = sc.k_ratio;
      jsc["psi_q_norms"] = sc.psi_q_norms;
      scales.push_back(jsc);
    }
    js["scales"] = scales;
    seeds.push_back(js);
  }
  j["per_seed"] = seeds;
  return j.dump(2);
}

std::string ablation_json(const AblationReport& rep) {
  nlohmann::json j;
  j["levels"] = rep.levels;
  j["augmented_errors"] = rep.augmented_errors;
  j["dyadic_errors"] = rep.dyadic_errors;
  j["dyadic_jump_errors"] = rep.dyadic_jump_errors;
  j["jump_time"] = rep.jump_time;
  j["jump_size_norm"] = rep.jump_size_norm;
  j["jump_floor"] = rep.jump_floor;
  j["augmented_converges"] = rep.augmented_converges;
  j["dyadic_stalls"] = rep.dyadic_stalls;
  j["pass"] = rep.pass;
  return j.dump(2);
}

}  // namespace roughlab

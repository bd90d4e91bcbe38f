#include "roughlab/processes.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "roughlab/rng.hpp"

namespace roughlab {

namespace {

Mat cholesky_psd(const Mat& sigma) {
  require(sigma.rows() == sigma.cols(), "covariance must be square");
  require((sigma - sigma.transpose()).norm() <= 1e-10 * (1.0 + sigma.norm()),
          "covariance must be symmetric");
  Eigen::LLT<Mat> llt(sigma);
  if (llt.info() == Eigen::Success) return llt.matrixL();
  Mat jittered = sigma + 1e-12 * Mat::Identity(sigma.rows(), sigma.cols());
  Eigen::LLT<Mat> llt2(jittered);
  require(llt2.info() == Eigen::Success, "covariance is not positive semidefinite");
  return llt2.matrixL();
}

}  // namespace

CadlagPath sample_brownian(std::uint64_t seed, const Mat& sigma_cov, const Partition& grid) {
  const Index d = sigma_cov.rows();
  Mat L = cholesky_psd(sigma_cov);
  Mat vals(d, grid.size());
  vals.col(0).setZero();
  Vec z(d);
  for (Index i = 0; i + 1 < grid.size(); ++i) {
    const double dt = grid[i + 1] - grid[i];
    for (Index c = 0; c < d; ++c)
      z(c) = rng::gaussian(seed, rng::kBrownian,
                           static_cast<std::uint64_t>(i) * static_cast<std::uint64_t>(d) +
                               static_cast<std::uint64_t>(c));
    vals.col(i + 1) = vals.col(i) + std::sqrt(dt) * (L * z);
  }
  return CadlagPath(grid, std::move(vals));
}

ItoSample sample_ito(std::uint64_t seed, const ItoSpec& spec, const Partition& grid) {
  const Index d = spec.x0.size();
  ItoSample out;
  out.w = sample_brownian(seed, Mat::Identity(spec.brownian_dim, spec.brownian_dim), grid);
  Mat vals(d, grid.size());
  vals.col(0) = spec.x0;
  for (Index i = 0; i + 1 < grid.size(); ++i) {
    const double t = grid[i];
    const double dt = grid[i + 1] - grid[i];
    Vec w = out.w.value(i);
    Vec b = spec.b(t, w);
    Mat H = spec.H(t, w);
    require(b.allFinite() && H.allFinite(), "Ito integrand evaluated to a non-finite value");
    vals.col(i + 1) = vals.col(i) + b * dt + H * (out.w.value(i + 1) - w);
  }
  out.x = CadlagPath(grid, std::move(vals));
  return out;
}

namespace {

struct RealizedJump {
  double time;
  Vec size;
};

Vec sample_jump_size(std::uint64_t seed, const JumpSpec& spec, Index d, std::uint64_t stream,
                     std::uint64_t& counter) {
  switch (spec.kind) {
    case JumpSpec::Kind::Fixed:
      return spec.fixed_value;
    case JumpSpec::Kind::Gaussian: {
      Vec v(d);
      for (Index c = 0; c < d; ++c) v(c) = spec.gaussian_sd * rng::gaussian(seed, stream, counter++);
      return v;
    }
    case JumpSpec::Kind::UniformSym: {
      Vec v(d);
      for (Index c = 0; c < d; ++c)
        v(c) = spec.uniform_halfwidth * (2.0 * rng::uniform(seed, stream, counter++) - 1.0);
      return v;
    }
  }
  throw std::logic_error("unreachable jump kind");
}

}  // namespace

LevySample sample_levy(std::uint64_t seed, const LevyCharacteristics& chars,
                       const Partition& grid, int level, PsiPolicy policy) {
  require(level >= 0, "truncation level must be >= 0");
  const Index d = chars.drift.size();
  require(chars.covariance.rows() == d, "drift/covariance dimension mismatch");
  const double T = grid.horizon();
  const double threshold = std::ldexp(1.0, -level);

  // Realized jumps: Poisson times via exponential gaps, one stream pair per
  // jump entry so entries never perturb each other's draws.
  std::vector<RealizedJump> jumps;
  // Compensators per unit time: the full window |x| < 1 enters phi, the
  // window [2^-n, 1) enters the simulatable big-jump part; their difference
  // (sizes below the threshold) stays with the small-jump residual.
  Vec comp_full = Vec::Zero(d), comp_big = Vec::Zero(d);
  for (std::size_t e = 0; e < chars.jumps.size(); ++e) {
    const JumpSpec& js = chars.jumps[e];
    require(js.intensity >= 0.0, "jump intensity must be >= 0");
    if (js.kind == JumpSpec::Kind::Fixed)
      require(js.fixed_value.size() == d, "fixed jump size dimension mismatch");
    if (js.compensate) {
      require(js.kind == JumpSpec::Kind::Fixed,
              "only fixed-size entries carry a nonzero compensator (symmetric laws have mean 0)");
      require(js.fixed_value.norm() < 1.0, "compensated entries must have size inside the unit ball");
      comp_full += js.intensity * js.fixed_value;
      if (js.fixed_value.norm() >= threshold) comp_big += js.intensity * js.fixed_value;
    }
    if (js.intensity == 0.0) continue;
    std::uint64_t tctr = 0, sctr = 0;
    const std::uint64_t tstream = rng::kJumpTimes + 8 * e;
    const std::uint64_t sstream = rng::kJumpSizes + 8 * e;
    double t = 0.0;
    while (true) {
      t += -std::log(rng::uniform(seed, tstream, tctr++)) / js.intensity;
      if (t >= T) break;
      jumps.push_back({t, sample_jump_size(seed, js, d, sstream, sctr)});
    }
  }
  for (const ForcedJump& fj : chars.forced) {
    require(fj.time > kTimeTol && fj.time <= T + kTimeTol, "forced jump time outside (0, T]");
    require(fj.size.size() == d, "forced jump size dimension mismatch");
    jumps.push_back({std::min(fj.time, T), fj.size});
  }
  std::sort(jumps.begin(), jumps.end(),
            [](const RealizedJump& a, const RealizedJump& b) { return a.time < b.time; });

  // Insert the exact jump times into the grid.
  Partition aug = grid;
  if (!jumps.empty()) {
    std::vector<double> jts;
    jts.push_back(0.0);
    for (const RealizedJump& j : jumps)
      if (jts.empty() || j.time > jts.back() + kTimeTol) jts.push_back(j.time);
    if (jts.back() < T - kTimeTol) jts.push_back(T);
    aug = union_of(grid, Partition(std::move(jts)));
  }

  LevySample out;
  out.W = sample_brownian(seed, chars.covariance, aug);

  const Index n = aug.size();
  Mat phi(d, n), xhat_phi(d, n);
  std::map<Index, Vec> phi_lefts, xhat_lefts;
  phi.col(0).setZero();
  xhat_phi.col(0).setZero();
  Vec jump_acc = Vec::Zero(d), big_acc = Vec::Zero(d);
  std::size_t jp = 0;
  for (Index i = 1; i < n; ++i) {
    const double t = aug[i];
    Vec pre_all = jump_acc, pre_big = big_acc;
    bool jumped = false;
    while (jp < jumps.size() && jumps[jp].time <= t + kTimeTol) {
      jump_acc += jumps[jp].size;
      const double sz = jumps[jp].size.norm();
      if (sz >= threshold) {
        big_acc += jumps[jp].size;
        out.big_jump_times.push_back(aug[i]);
      }
      jumped = true;
      ++jp;
    }
    phi.col(i) = chars.drift * t - comp_full * t + jump_acc;
    xhat_phi.col(i) = chars.drift * t - comp_big * t + big_acc;
    if (jumped) {
      if ((jump_acc - pre_all).norm() > 0.0)
        phi_lefts.emplace(i, Vec(chars.drift * t - comp_full * t + pre_all));
      if ((big_acc - pre_big).norm() > 0.0)
        xhat_lefts.emplace(i, Vec(chars.drift * t - comp_big * t + pre_big));
    }
  }
  out.phi = CadlagPath(aug, phi, phi_lefts);
  out.big_jump_times.erase(std::unique(out.big_jump_times.begin(), out.big_jump_times.end()),
                           out.big_jump_times.end());

  CadlagPath xhat_jump_part(aug, xhat_phi, xhat_lefts);
  out.L = path_sum(out.W, out.phi);
  out.x_hat = path_sum(out.W, xhat_jump_part);

  if (policy == PsiPolicy::GaussianMatch && chars.small_tail) {
    const SmallJumpTail& tail = chars.small_tail.value();
    const double var = tail.var_coeff * std::pow(std::min(threshold, 1.0), tail.var_exponent);
    if (var > 0.0) {
      Mat g(d, n);
      g.col(0).setZero();
      for (Index i = 0; i + 1 < n; ++i) {
        const double dt = aug[i + 1] - aug[i];
        Vec z(d);
        for (Index c = 0; c < d; ++c)
          z(c) = rng::gaussian(seed, rng::kSmallGaussian,
                               static_cast<std::uint64_t>(i) * static_cast<std::uint64_t>(d) +
                                   static_cast<std::uint64_t>(c));
        g.col(i + 1) = g.col(i) + std::sqrt(var * dt) * z;
      }
      out.x_hat = path_sum(out.x_hat, CadlagPath(aug, std::move(g)));
    }
  }
  out.psi = path_sum(out.x_hat, out.L, -1.0);
  return out;
}

Partition build_levy_partition(int n, double T, const std::vector<double>& jump_times) {
  return make_partition(PartitionFamily::LevyAugmented, n, T, jump_times);
}

Partition build_stopping_partition(const CadlagPath& X, int n) {
  const Partition& G = X.grid();
  const double T = G.horizon();
  const double threshold = std::ldexp(1.0, -n);
  require(G.mesh() <= std::ldexp(T, -n - 2) + kTimeTol,
          "grid too coarse to resolve the stopping times");
  std::vector<double> taus;
  taus.push_back(0.0);
  Index anchor = 0;
  for (Index i = 1; i < G.size(); ++i) {
    const double osc = (G[i] - G[anchor]) + (X.value(i) - X.value(anchor)).norm();
    if (osc >= threshold) {
      taus.push_back(G[i]);
      anchor = i;
    }
  }
  if (taus.back() < T - kTimeTol) taus.push_back(T);
  return Partition(std::move(taus));
}

void FbmSpec::validate() const {
  require(hurst > 0.5 && hurst < 1.0, "Hurst parameter must lie strictly inside (1/2, 1)");
  require(dim >= 1, "dimension must be >= 1");
}

double fbm_increment_covariance(double hurst, double delta, Index i, Index j) {
  const double k = static_cast<double>(std::llabs(i - j));
  const double h2 = 2.0 * hurst;
  return 0.5 * std::pow(delta, h2) *
         (std::pow(k + 1.0, h2) + std::pow(std::abs(k - 1.0), h2) - 2.0 * std::pow(k, h2));
}

namespace {

// Radix-2 in-place FFT (enough for the circulant embedding; sizes are
// powers of two by construction).
void fft_radix2(std::vector<std::complex<double>>& a, bool inverse) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = 2.0 * M_PI / static_cast<double>(len) * (inverse ? 1.0 : -1.0);
    const std::complex<double> wl(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        std::complex<double> u = a[i + k], v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wl;
      }
    }
  }
  if (inverse)
    for (auto& x : a) x /= static_cast<double>(n);
}

// Davies-Harte circulant embedding: returns n_inc stationary fBm increments
// for one component.
std::vector<double> circulant_fbm_increments(std::uint64_t seed, std::uint64_t stream,
                                             double hurst, double delta, Index n_inc) {
  std::size_t m = 1;
  while (m < 2 * static_cast<std::size_t>(n_inc)) m <<= 1;
  std::vector<std::complex<double>> c(m);
  for (std::size_t k = 0; k < m; ++k) {
    std::size_t lag = std::min(k, m - k);
    c[k] = fbm_increment_covariance(hurst, delta, 0, static_cast<Index>(lag));
  }
  fft_radix2(c, false);
  std::vector<std::complex<double>> z(m);
  std::uint64_t ctr = 0;
  for (std::size_t k = 0; k < m; ++k) {
    double lambda = c[k].real();
    require(lambda > -1e-8 * std::pow(delta, 2.0 * hurst) * static_cast<double>(m),
            "circulant embedding eigenvalue strongly negative: covariance factorization failure");
    lambda = std::max(lambda, 0.0);
    const double g1 = rng::gaussian(seed, stream, ctr++);
    const double g2 = rng::gaussian(seed, stream, ctr++);
    // per-component variance lambda/m makes Re(FFT(z)) stationary with
    // autocovariance exactly c
    z[k] = std::sqrt(lambda / static_cast<double>(m)) * std::complex<double>(g1, g2);
  }
  fft_radix2(z, false);
  std::vector<double> inc(static_cast<std::size_t>(n_inc));
  for (Index i = 0; i < n_inc; ++i) inc[static_cast<std::size_t>(i)] = z[static_cast<std::size_t>(i)].real();
  return inc;
}

}  // namespace

CadlagPath sample_fbm(std::uint64_t seed, const FbmSpec& spec, const Partition& grid) {
  spec.validate();
  const Index n = grid.size();
  const double delta = grid[1] - grid[0];
  for (Index i = 1; i + 1 < n; ++i)
    require(std::abs((grid[i + 1] - grid[i]) - delta) <= 1e-9 * delta,
            "fBm sampling requires an equidistant grid");
  const Index n_inc = n - 1;
  Mat vals(spec.dim, n);
  vals.col(0).setZero();
  if (n_inc <= (Index{1} << 12)) {
    Mat cov(n_inc, n_inc);
    for (Index i = 0; i < n_inc; ++i)
      for (Index j = 0; j < n_inc; ++j) cov(i, j) = fbm_increment_covariance(spec.hurst, delta, i, j);
    Eigen::LLT<Mat> llt(cov);
    if (llt.info() != Eigen::Success) {
      cov += 1e-12 * Mat::Identity(n_inc, n_inc);
      llt.compute(cov);
      require(llt.info() == Eigen::Success, "fBm covariance factorization failure");
    }
    Mat L = llt.matrixL();
    for (Index c = 0; c < spec.dim; ++c) {
      Vec z(n_inc);
      for (Index i = 0; i < n_inc; ++i)
        z(i) = rng::gaussian(seed, rng::kFbm + 16 * static_cast<std::uint64_t>(c),
                             static_cast<std::uint64_t>(i));
      Vec inc = L * z;
      for (Index i = 0; i < n_inc; ++i) vals(c, i + 1) = vals(c, i) + inc(i);
    }
  } else {
    for (Index c = 0; c < spec.dim; ++c) {
      std::vector<double> inc = circulant_fbm_increments(
          seed, rng::kFbm + 16 * static_cast<std::uint64_t>(c), spec.hurst, delta, n_inc);
      for (Index i = 0; i < n_inc; ++i)
        vals(c, i + 1) = vals(c, i) + inc[static_cast<std::size_t>(i)];
    }
  }
  return CadlagPath(grid, std::move(vals));
}

CadlagPath deterministic_eta(const EtaSpec& spec, const Partition& grid) {
  require(spec.alpha >= spec.min_holder - 1e-12, "eta Hoelder exponent below the required bound");
  switch (spec.kind) {
    case EtaKind::Linear: {
      Mat vals(spec.dim, grid.size());
      for (Index i = 0; i < grid.size(); ++i) vals.col(i).setConstant(spec.scale * grid[i]);
      return CadlagPath(grid, std::move(vals));
    }
    case EtaKind::Weierstrass: {
      require(spec.base > 1.0, "Weierstrass base must exceed 1");
      const double a = std::pow(spec.base, -spec.alpha);
      Mat vals(spec.dim, grid.size());
      for (Index c = 0; c < spec.dim; ++c) {
        const double phase = 0.4 * static_cast<double>(c + 1);
        for (Index i = 0; i < grid.size(); ++i) {
          double s = 0.0, ak = 1.0, bk = 1.0;
          for (int k = 0; k <= spec.terms; ++k) {
            s += ak * std::cos(bk * M_PI * grid[i] + phase);
            ak *= a;
            bk *= spec.base;
          }
          vals(c, i) = spec.scale * s;
        }
      }
      return CadlagPath(grid, std::move(vals));
    }
    case EtaKind::FrozenFbm: {
      FbmSpec fs;
      fs.hurst = spec.alpha;
      fs.dim = spec.dim;
      CadlagPath p = sample_fbm(spec.frozen_seed, fs, grid);
      Mat vals = spec.scale * p.values();
      return CadlagPath(grid, std::move(vals));
    }
  }
  throw std::logic_error("unreachable eta kind");
}

PartitionConditionReport check_partition_condition(const PartitionSequence& S, double p) {
  PartitionConditionReport rep;
  for (std::size_t li = 0; li < S.count(); ++li) {
    const Partition& P = S.level(li);
    const double d0 = P[1] - P[0];
    for (Index i = 1; i + 1 < P.size(); ++i)
      require(std::abs((P[i + 1] - P[i]) - d0) <= 1e-9 * d0,
              "partition condition requires equidistant levels");
    const double pos = static_cast<double>(li + 1);
    rep.values.push_back(std::pow(P.mesh(), 2.0 - 4.0 / p) * std::log(pos));
  }
  bool dec = rep.values.size() >= 3;
  for (std::size_t i = 2; i + 1 < rep.values.size(); ++i)
    if (rep.values[i + 1] >= rep.values[i]) dec = false;
  if (rep.values.size() >= 4) dec = dec && rep.values.back() < rep.values[2];
  rep.decreasing = dec;
  return rep;
}

}  // namespace roughlab

#include <cmath>

#include "doctest.h"
#include "roughlab/processes.hpp"
#include "roughlab/variation.hpp"

using namespace roughlab;

TEST_CASE("Brownian sampler basics") {
  Partition G = Partition::dyadic(8, 1.0);
  Mat cov = Mat::Identity(2, 2);
  CadlagPath W1 = sample_brownian(99, cov, G);
  CHECK(W1.value(0).norm() == 0.0);
  CadlagPath W2 = sample_brownian(99, cov, G);
  CHECK(sup_distance(W1, W2) == 0.0);
  CadlagPath W3 = sample_brownian(100, cov, G);
  CHECK(sup_distance(W1, W3) > 0.0);
  Mat bad(2, 2);
  bad << 1.0, 2.0, 2.0, 1.0;  // indefinite
  CHECK_THROWS_AS(sample_brownian(99, bad, G), std::invalid_argument);
}

TEST_CASE("Brownian increments match the covariance within 3 standard errors") {
  Partition G = Partition::equidistant(1 << 12, 1.0);
  const double s2 = 1.7;
  Mat cov = s2 * Mat::Identity(1, 1);
  CadlagPath W = sample_brownian(123, cov, G);
  const double dt = G.mesh();
  double sum = 0.0, sumsq = 0.0;
  const Index n = W.size() - 1;
  for (Index i = 0; i < n; ++i) {
    double z = (W.value(i + 1)(0) - W.value(i)(0));
    sum += z * z / dt;
    sumsq += z * z * z * z / (dt * dt);
  }
  double mean = sum / static_cast<double>(n);
  double se = std::sqrt((sumsq / n - mean * mean) / static_cast<double>(n));
  CHECK(std::abs(mean - s2) <= 3.0 * se);
}

TEST_CASE("Ito sampler degenerate cases") {
  Partition G = Partition::dyadic(10, 1.0);
  ItoSpec id;
  id.x0 = Vec::Zero(1);
  id.brownian_dim = 1;
  id.b = [](double, const Vec&) { return Vec::Zero(1); };
  id.H = [](double, const Vec&) { return Mat::Identity(1, 1); };
  ItoSample s = sample_ito(7, id, G);
  CHECK(sup_distance(s.x, s.w) == 0.0);

  ItoSpec drift;
  drift.x0 = Vec::Constant(1, 0.4);
  drift.brownian_dim = 1;
  drift.b = [](double, const Vec&) { return Vec::Constant(1, 1.0); };
  drift.H = [](double, const Vec&) { return Mat::Zero(1, 1); };
  ItoSample s2 = sample_ito(7, drift, G);
  for (Index i = 0; i < G.size(); ++i) CHECK(s2.x.value(i)(0) == doctest::Approx(0.4 + G[i]));
}

TEST_CASE("Ito quadratic variation matches the integrand") {
  Partition G = Partition::equidistant(1 << 12, 1.0);
  ItoSpec spec;
  spec.x0 = Vec::Zero(2);
  spec.brownian_dim = 2;
  spec.b = [](double, const Vec&) { return Vec::Zero(2); };
  spec.H = [](double, const Vec&) { return Mat(2.0 * Mat::Identity(2, 2)); };
  ItoSample s = sample_ito(31, spec, G);
  double qv = 0.0;
  for (Index i = 0; i + 1 < G.size(); ++i) qv += (s.x.value(i + 1) - s.x.value(i)).squaredNorm();
  CHECK(std::abs(qv - 4.0 * 2.0) <= 0.05 * 8.0);
}

TEST_CASE("Levy sampler with no jumps reproduces Brownian plus drift") {
  Partition G = Partition::dyadic(9, 1.0);
  LevyCharacteristics c;
  c.drift = Vec::Zero(1);
  c.covariance = Mat::Identity(1, 1);
  LevySample s = sample_levy(5, c, G, 8);
  CadlagPath W = sample_brownian(5, Mat::Identity(1, 1), G);
  CHECK(sup_distance(s.L, W) == 0.0);  // bitwise: same stream, same grid

  c.drift = Vec::Constant(1, 0.7);
  LevySample s2 = sample_levy(5, c, G, 8);
  for (Index i = 0; i < G.size(); ++i)
    CHECK(s2.L.value(i)(0) == doctest::Approx(W.value(i)(0) + 0.7 * G[i]));
}

TEST_CASE("Levy jump classification by threshold") {
  Partition G = Partition::dyadic(9, 1.0);
  LevyCharacteristics c;
  c.drift = Vec::Zero(1);
  c.covariance = Mat::Zero(1, 1);
  c.forced.push_back({0.37, Vec::Constant(1, 0.3)});
  // size 0.3 counts as big iff 2^-n <= 0.3, i.e. n >= 2
  LevySample s1 = sample_levy(6, c, G, 1);
  CHECK(s1.big_jump_times.empty());
  LevySample s2 = sample_levy(6, c, G, 2);
  REQUIRE(s2.big_jump_times.size() == 1);
  CHECK(s2.big_jump_times[0] == doctest::Approx(0.37));
  // the jump time is inserted exactly into the grid
  CHECK(s2.L.grid().find(0.37) >= 0);
  // psi at level 1 carries the dropped small jump; at level 2 it vanishes
  CHECK(p_variation(s1.psi, 1.0) > 0.0);
  CHECK(p_variation(s2.psi, 1.0) == 0.0);
}

TEST_CASE("compensated symmetric jumps have mean drift lambda T") {
  Partition G = Partition::dyadic(6, 1.0);
  LevyCharacteristics c;
  c.drift = Vec::Constant(1, 0.9);
  c.covariance = Mat::Zero(1, 1);
  JumpSpec js;
  js.kind = JumpSpec::Kind::UniformSym;
  js.intensity = 6.0;
  js.uniform_halfwidth = 0.4;
  c.jumps.push_back(js);
  const int n_seeds = 1000;
  double sum = 0.0, sumsq = 0.0;
  for (int s = 0; s < n_seeds; ++s) {
    LevySample ls = sample_levy(4000 + static_cast<std::uint64_t>(s), c, G, 10);
    double xT = ls.phi.value(ls.phi.size() - 1)(0);
    sum += xT;
    sumsq += xT * xT;
  }
  double mean = sum / n_seeds;
  double se = std::sqrt((sumsq / n_seeds - mean * mean) / n_seeds);
  CHECK(std::abs(mean - 0.9) <= 3.0 * se);
}

TEST_CASE("levy partitions are nested when jump sets grow") {
  Partition G = Partition::dyadic(9, 1.0);
  LevyCharacteristics c;
  c.drift = Vec::Zero(1);
  c.covariance = Mat::Identity(1, 1);
  JumpSpec js;
  js.kind = JumpSpec::Kind::UniformSym;
  js.intensity = 8.0;
  js.uniform_halfwidth = 0.5;
  c.jumps.push_back(js);
  std::vector<double> prev_jumps;
  std::vector<Partition> seq;
  for (int n = 2; n <= 8; ++n) {
    LevySample s = sample_levy(11, c, G, n);
    Partition P = build_levy_partition(n, 1.0, s.big_jump_times);
    CHECK(is_subset(Partition::dyadic(n, 1.0), P));
    for (double t : prev_jumps) CHECK(P.contains(t));
    prev_jumps = s.big_jump_times;
    seq.push_back(std::move(P));
  }
  // with growing jump sets, every realized jump is eventually in all levels
  PartitionSequence S(seq, PartitionFamily::LevyAugmented, seq.back().mesh() + 1e-12);
  CHECK(jumps_exhausted(prev_jumps, S).exhausted);
}

TEST_CASE("stopping-time partitions") {
  Partition G = Partition::dyadic(10, 1.0);
  const int n = 4;
  // constant path: time term alone triggers at 2^-n spacing
  CadlagPath flat = constant_path(G, Vec::Zero(1));
  Partition P = build_stopping_partition(flat, n);
  const double thr = std::ldexp(1.0, -n);
  for (Index i = 0; i + 1 < P.size(); ++i)
    CHECK(std::abs((P[i + 1] - P[i]) - thr) <= G.mesh() + 1e-12);
  CHECK(P.mesh() <= thr + G.mesh() + 1e-12);

  // a jump of size >= 2^-n forces a partition point at the jump time
  Mat vals(1, G.size());
  for (Index i = 0; i < G.size(); ++i) vals(0, i) = G[i] >= 0.296875 ? 0.5 : 0.0;
  CadlagPath jump(G, vals);  // 0.296875 = 19/64 lies on the level-10 grid
  Partition PJ = build_stopping_partition(jump, n);
  CHECK(PJ.contains(0.296875));

  // the defining infimum property holds between partition points
  CadlagPath W = sample_brownian(2024, Mat::Identity(1, 1), G);
  Partition PW = build_stopping_partition(W, n);
  std::vector<Index> idx = subset_indices(PW, G);
  for (std::size_t k = 0; k + 1 < idx.size(); ++k) {
    for (Index i = idx[k] + 1; i < idx[k + 1]; ++i) {
      double osc = (G[i] - G[idx[k]]) + (W.value(i) - W.value(idx[k])).norm();
      CHECK(osc < thr);
    }
  }
  CHECK_THROWS_AS(build_stopping_partition(flat, 9), std::invalid_argument);
}

TEST_CASE("fBm increment covariance reduces to Brownian at H = 1/2") {
  const double delta = 1.0 / 64.0;
  CHECK(fbm_increment_covariance(0.5, delta, 3, 3) == doctest::Approx(delta));
  CHECK(fbm_increment_covariance(0.5, delta, 2, 5) == doctest::Approx(0.0));
}

TEST_CASE("fBm sampler determinism and validation") {
  Partition G = Partition::equidistant(128, 1.0);
  FbmSpec spec;
  spec.hurst = 0.75;
  CadlagPath a = sample_fbm(42, spec, G);
  CadlagPath b = sample_fbm(42, spec, G);
  CHECK(sup_distance(a, b) == 0.0);
  FbmSpec bad;
  bad.hurst = 0.4;
  CHECK_THROWS_AS(sample_fbm(42, bad, G), std::invalid_argument);
}

TEST_CASE("circulant sampler matches the exact covariance across seeds") {
  // Large grids take the circulant-embedding branch; estimate E[X_s X_t]
  // at probe pairs over seeds and compare within 3 standard errors.
  Partition G = Partition::equidistant((1 << 13), 1.0);
  FbmSpec spec;
  spec.hurst = 0.7;
  const int n_seeds = 200;
  const double h2 = 2.0 * spec.hurst;
  auto exact = [&](double s, double t) {
    return 0.5 * (std::pow(s, h2) + std::pow(t, h2) - std::pow(std::abs(t - s), h2));
  };
  const std::vector<std::pair<double, double>> probes = {{0.25, 0.5}, {0.5, 1.0}, {0.125, 0.875}};
  std::vector<double> sums(probes.size(), 0.0), sumsqs(probes.size(), 0.0);
  for (int s = 0; s < n_seeds; ++s) {
    CadlagPath X = sample_fbm(7000 + static_cast<std::uint64_t>(s), spec, G);
    for (std::size_t k = 0; k < probes.size(); ++k) {
      double prod = X.value_at_time(probes[k].first)(0) * X.value_at_time(probes[k].second)(0);
      sums[k] += prod;
      sumsqs[k] += prod * prod;
    }
  }
  for (std::size_t k = 0; k < probes.size(); ++k) {
    double mean = sums[k] / n_seeds;
    double se = std::sqrt((sumsqs[k] / n_seeds - mean * mean) / n_seeds);
    CHECK(std::abs(mean - exact(probes[k].first, probes[k].second)) <= 3.0 * se);
  }
}

TEST_CASE("deterministic eta paths") {
  Partition G = Partition::dyadic(9, 1.0);
  EtaSpec lin;
  lin.kind = EtaKind::Linear;
  CadlagPath e1 = deterministic_eta(lin, G);
  CHECK(holder_constant(e1, 1.0) == doctest::Approx(1.0));

  EtaSpec w0;
  w0.kind = EtaKind::Weierstrass;
  w0.terms = 0;
  w0.alpha = 1.0;
  CadlagPath e2 = deterministic_eta(w0, G);
  CHECK(holder_constant(e2, 1.0) <= M_PI + 0.01);  // single cosine is pi-Lipschitz

  EtaSpec rough;
  rough.kind = EtaKind::Weierstrass;
  rough.terms = 12;
  rough.alpha = 0.4;
  CadlagPath c1 = deterministic_eta(rough, Partition::dyadic(10, 1.0));
  CadlagPath c2 = deterministic_eta(rough, Partition::dyadic(11, 1.0));
  double h1 = holder_constant(c1, 0.4);
  double h2 = holder_constant(c2, 0.4);
  CHECK(std::abs(h1 - h2) <= 0.2 * std::max(h1, h2));

  EtaSpec low;
  low.alpha = 0.3;
  low.min_holder = 0.45;
  CHECK_THROWS_AS(deterministic_eta(low, G), std::invalid_argument);

  CadlagPath again = deterministic_eta(rough, Partition::dyadic(10, 1.0));
  CHECK(sup_distance(c1, again) == 0.0);
}

TEST_CASE("partition growth condition") {
  PartitionSequence S = PartitionSequence::dyadic(1, 10, 1.0);
  auto rep = check_partition_condition(S, 2.5);
  CHECK(rep.decreasing);
  // p close to 2: exponent vanishes, log n dominates
  auto rep2 = check_partition_condition(S, 2.0001);
  CHECK_FALSE(rep2.decreasing);
  // constant-mesh sequence
  std::vector<Partition> flat(6, Partition::dyadic(5, 1.0));
  PartitionSequence Sf(flat, PartitionFamily::Dyadic, 1.0);
  CHECK_FALSE(check_partition_condition(Sf, 2.5).decreasing);
  // non-equidistant level is rejected
  std::vector<Partition> bad = {Partition({0.0, 0.4, 1.0})};
  PartitionSequence Sb(bad, PartitionFamily::Custom, 1.0);
  CHECK_THROWS_AS(check_partition_condition(Sb, 2.5), std::invalid_argument);
}

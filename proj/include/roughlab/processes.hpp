#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "roughlab/common.hpp"
#include "roughlab/partition.hpp"
#include "roughlab/path.hpp"

namespace roughlab {

// Brownian sample with covariance Sigma per unit time: increments are
// independent N(0, dt * Sigma), W_0 = 0; a deterministic function of the
// seed.
CadlagPath sample_brownian(std::uint64_t seed, const Mat& sigma_cov, const Partition& grid);

// Ito process X_t = x0 + int b dr + int H dW built by left-point Euler
// construction on the master grid; integrands are functions of (t, W_t).
struct ItoSpec {
  Vec x0;
  Index brownian_dim = 1;
  std::function<Vec(double, const Vec&)> b;  // d
  std::function<Mat(double, const Vec&)> H;  // d x m
};

struct ItoSample {
  CadlagPath x;
  CadlagPath w;
};

ItoSample sample_ito(std::uint64_t seed, const ItoSpec& spec, const Partition& grid);

// Jump-size laws kept analytic enough to compensate exactly: a fixed vector,
// an isotropic centered Gaussian, or per-coordinate symmetric uniforms.
struct JumpSpec {
  enum class Kind { Fixed, Gaussian, UniformSym };
  Kind kind = Kind::Fixed;
  double intensity = 0.0;       // expected jumps per unit time
  Vec fixed_value;              // Fixed
  double gaussian_sd = 0.0;     // Gaussian (mean 0, isotropic)
  double uniform_halfwidth = 0.0;  // UniformSym: coordinates U(-a, a)
  bool compensate = false;      // subtract intensity * mean * t (Fixed only; symmetric laws have mean 0)
};

struct ForcedJump {
  double time = 0.0;
  Vec size;
};

// Residual small-jump activity below the truncation threshold, described by
// its variance function int_{|x|<eps} |x|^2 nu(dx) = var_coeff * eps^var_exponent.
struct SmallJumpTail {
  double q_bound = 1.0;
  double var_coeff = 0.0;
  double var_exponent = 1.0;
};

struct LevyCharacteristics {
  Vec drift;       // lambda
  Mat covariance;  // Sigma (PSD)
  std::vector<JumpSpec> jumps;
  std::vector<ForcedJump> forced;
  std::optional<SmallJumpTail> small_tail;
};

enum class PsiPolicy { Drop, GaussianMatch };

// Output of the Levy sampler at truncation level n (threshold 2^-n). Jump
// times are inserted exactly into the grid, so all paths live on the
// augmented grid. x_hat is the level-n simulatable driver (big jumps only,
// plus moment-matched Gaussian under GaussianMatch); psi = x_hat - L.
struct LevySample {
  CadlagPath L;
  CadlagPath W;
  CadlagPath phi;
  CadlagPath x_hat;
  CadlagPath psi;
  std::vector<double> big_jump_times;  // J^n
};

LevySample sample_levy(std::uint64_t seed, const LevyCharacteristics& chars,
                       const Partition& grid, int level, PsiPolicy policy = PsiPolicy::Drop);

// P_L^n = dyadic level n union the realized jump times.
Partition build_levy_partition(int n, double T, const std::vector<double>& jump_times);

// Stopping-time partition: successive first grid times where
// |t - tau_{k-1}| + |X_t - X_{tau_{k-1}}| >= 2^-n, always ending at T.
// Requires grid mesh <= 2^{-n-2} * T.
Partition build_stopping_partition(const CadlagPath& X, int n);

struct FbmSpec {
  double hurst = 0.75;
  Index dim = 1;
  void validate() const;
};

// Exact-covariance fBm sample: Cholesky of the increment covariance up to
// 2^12 grid points, circulant embedding beyond.
CadlagPath sample_fbm(std::uint64_t seed, const FbmSpec& spec, const Partition& grid);

// Stationary increment covariance Cov(X_i, X_j) of fBm on an equidistant
// grid with spacing delta; exposed for tests (H = 1/2 reduces to Brownian).
double fbm_increment_covariance(double hurst, double delta, Index i, Index j);

enum class EtaKind { Linear, Weierstrass, FrozenFbm };

struct EtaSpec {
  EtaKind kind = EtaKind::Weierstrass;
  Index dim = 1;
  double alpha = 0.5;  // Hoelder exponent of the construction
  double base = 2.0;   // Weierstrass frequency base
  int terms = 12;      // Weierstrass series length
  double scale = 1.0;
  std::uint64_t frozen_seed = 0xE7A;
  double min_holder = 0.0;  // required lower bound on alpha (e.g. 1/p)
};

// Deterministic eta path; identical across calls for fixed spec.
CadlagPath deterministic_eta(const EtaSpec& spec, const Partition& grid);

struct PartitionConditionReport {
  std::vector<double> values;  // mesh^{2-4/p} * log(position)
  bool decreasing = false;
};

// Evaluates the equidistant-partition growth condition mesh^{2-4/p} log n
// per level and reports whether it decreases toward zero over the stored
// levels (monotone from the third level on).
PartitionConditionReport check_partition_condition(const PartitionSequence& S, double p);

}  // namespace roughlab

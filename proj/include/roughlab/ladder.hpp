#pragma once

#include <cstdint>
#include <string>

#include "roughlab/coefficients.hpp"
#include "roughlab/common.hpp"
#include "roughlab/processes.hpp"
#include "roughlab/schemes.hpp"

namespace roughlab {

enum class DriverFamily { Brownian, Ito, Levy, Semimartingale, Fbm, Eta };
enum class ErrorNorm { PPrimeVar, Sup, ThreeVar };

std::string to_string(DriverFamily f);
DriverFamily driver_family_from_string(const std::string& s);
std::string to_string(ErrorNorm n);
ErrorNorm error_norm_from_string(const std::string& s);

struct ItoIntegrandSpec {
  double drift_amp = 0.3;
  double vol_base = 0.8;
  double vol_amp = 0.2;
};

struct DriverSpec {
  DriverFamily family = DriverFamily::Brownian;
  Index dim = 1;
  double cov_scale = 1.0;  // Brownian covariance = cov_scale * Identity
  ItoIntegrandSpec ito;
  LevyCharacteristics levy;
  FbmSpec fbm;
  EtaSpec eta;
};

struct PhiSpec {
  EtaSpec path;  // deterministic perturbation path family
  std::vector<double> scales = {1.0, 0.5, 0.25};
};

struct ExperimentConfig {
  double T = 1.0;
  DriverSpec driver;

  std::string coeff_kind = "tanh";
  Index state_dim = 1;
  std::vector<std::pair<std::string, double>> coeff_params;
  Vec y0;

  double p = 2.25;
  double p_prime = 2.75;
  double q = 1.4;
  double q_prime = 1.8;
  double beta = -1.0;     // default resolved per family
  double epsilon = 0.05;  // rate slack of the Ito / semimartingale bounds
  double delta = -1.0;    // Levy small-jump exponent, default (1 - q/2) - 0.05
  double theoretical_override = std::numeric_limits<double>::quiet_NaN();

  int n_min = 4;
  int n_max = 10;
  int n_ref = 13;  // reference level; must be >= n_max + 3

  std::vector<std::uint64_t> seeds = {1};
  ErrorNorm norm = ErrorNorm::PPrimeVar;
  PsiPolicy psi_policy = PsiPolicy::Drop;
  PhiSpec phi;
  int workers = 1;
  std::string out_dir;

  void validate() const;
};

// Per-family reference exponent with the pinned defaults for the free rate
// parameters (beta, epsilon, delta).
double theoretical_exponent(const ExperimentConfig& cfg);

struct RateFit {
  double slope = 0.0;  // of -log2(error) against the level index
  double intercept = 0.0;
  double residual = 0.0;  // rms residual of the fit
  int used = 0;
  int dropped = 0;  // zero errors dropped
};

RateFit fit_rate(const std::vector<int>& levels, const std::vector<double>& errors);

struct LevelRecord {
  int level = 0;
  double error = 0.0;
  double mesh_term = 0.0;
  double path_term = 0.0;
  double integral_term = 0.0;
};

struct SeedRateReport {
  std::uint64_t seed = 0;
  std::vector<LevelRecord> levels;
  RateFit fit;
  bool monotone = false;   // errors non-increasing level to level
  double k_fit = 0.0;      // max over levels of error / (sum of terms)
  double k_spread = 0.0;   // max ratio / min ratio across levels
  std::string error;       // nonempty when this seed's task failed
  bool failed() const { return !error.empty(); }
};

struct RateReport {
  std::vector<SeedRateReport> per_seed;
  std::vector<int> levels;
  std::vector<double> median_error;
  double median_slope = 0.0;
  double theoretical = 0.0;
  double monotone_fraction = 0.0;
  bool pass = false;
};

RateReport run_scheme_ladder(const ExperimentConfig& cfg);

struct ApproxScaleReport {
  double scale = 0.0;
  std::vector<int> levels;
  std::vector<double> errors;
  std::vector<double> psi_q_norms;  // Levy mode: ||psi^n||_q per level
  double limsup_estimate = 0.0;     // max error over the top 3 levels
  double bound = 0.0;               // (1 + ||X||_p + ||phi||_q) ||phi||_q
  double k_ratio = 0.0;             // limsup / bound
};

struct ApproxSeedReport {
  std::uint64_t seed = 0;
  std::vector<ApproxScaleReport> scales;
  std::vector<double> exact_errors;  // phi = 0 ladder on the same seed
  double k_fit = 0.0;                // max k_ratio across scales
  double k_spread = 0.0;
};

struct ApproxReport {
  bool levy_mode = false;  // per-level psi^n from the sampler instead of fixed phi
  std::vector<ApproxSeedReport> per_seed;
  double median_k_fit = 0.0;
  // Levy mode: median of (top-level approx error) / (top-level exact error).
  double median_top_ratio = 0.0;
  bool pass = false;
};

// Fixed-phi mode runs the ladder for each scale of the deterministic
// perturbation; Levy mode (driver family Levy with psi from the sampler)
// compares against the exact-increment ladder.
ApproxReport run_approx_ladder(const ExperimentConfig& cfg);

struct AblationReport {
  std::vector<int> levels;
  std::vector<double> augmented_errors;
  std::vector<double> dyadic_errors;
  std::vector<double> dyadic_jump_errors;  // |Y^n - Y_ref| at the qualifying jump
  double jump_time = 0.0;
  double jump_size_norm = 0.0;
  double jump_floor = 0.0;  // 0.5 |sigma(t*, Y_ref(t*-)) dL|
  bool augmented_converges = false;
  bool dyadic_stalls = false;
  bool pass = false;
};

// Runs the ladder with jump-augmented and with plain dyadic partitions for a
// Levy driver carrying a non-dyadic jump above the top-level threshold.
AblationReport jump_ablation(const ExperimentConfig& cfg);

// Error of a scheme output against the reference in the configured norm.
// Both paths are evaluated cadlag (held between their grid points) on the
// comparison grid, so the variation seminorms see the oscillation of the
// reference inside scheme intervals; that term carries the theoretical rate.
double scheme_error_norm(const CadlagPath& y_scheme, const CadlagPath& y_ref, ErrorNorm norm,
                         double p_prime, const Partition& comparison);
// Convenience overload comparing on the scheme's own partition points.
double scheme_error_norm(const CadlagPath& y_scheme, const CadlagPath& y_ref, ErrorNorm norm,
                         double p_prime);

void write_rate_csv(std::ostream& os, const RateReport& rep);
std::string rate_summary_json(const RateReport& rep);
void write_plot_data(std::ostream& os, const RateReport& rep);
void write_approx_csv(std::ostream& os, const ApproxReport& rep);
std::string approx_summary_json(const ApproxReport& rep);
std::string ablation_json(const AblationReport& rep);

}  // namespace roughlab

#pragma once

#include <iosfwd>
#include <optional>

#include "roughlab/common.hpp"
#include "roughlab/control.hpp"
#include "roughlab/partition.hpp"
#include "roughlab/path.hpp"

namespace roughlab {

// A cadlag p-rough path over the base grid. The second level is stored on
// consecutive grid pairs only; arbitrary pairs are reconstructed through
// Chen's relation in O(1) after an O(N d^2) prefix precomputation:
//   Xi_{t_k,t_l} = sum_i Xi_i + sum_i X_{t_i} (x) dX_i - X_{t_k} (x) X_{t_k,t_l}.
class RoughPath {
 public:
  RoughPath() = default;
  RoughPath(CadlagPath base, std::vector<Mat> second_level, double p);

  const CadlagPath& base() const { return base_; }
  double exponent() const { return p_; }
  Index dim() const { return base_.dim(); }
  Index size() const { return base_.size(); }
  const std::vector<Mat>& second_level() const { return second_; }

  // Xi_{t_k, t_l} via Chen reconstruction.
  Mat chen(Index k, Index l) const;
  Mat chen_at(double s, double t) const;
  double chen_norm(Index k, Index l) const { return chen(k, l).norm(); }

 private:
  CadlagPath base_;
  std::vector<Mat> second_;
  double p_ = 2.5;
  std::vector<Mat> prefix_second_;  // S1[j] = sum_{i<j} second_[i]
  std::vector<Mat> prefix_cross_;   // S2[j] = sum_{i<j} X_{t_i} (x) dX_i
};

Mat chen_eval(const RoughPath& R, double s, double t);

// Left-point Riemann sum sum_k X_{p_k} (x) X_{p_k ^ t, p_{k+1} ^ t} of the
// discretization X^n against X, up to grid time t.
Mat iterated_riemann(const CadlagPath& X, const Partition& P, double t);

// Prefix path of the above on the full grid of X: I[j] = integral up to g_j.
std::vector<Mat> iterated_riemann_prefix(const CadlagPath& X, const Partition& P);

struct CanonicalLiftReport {
  // sup_t |I_n(t) - I_{n+1}(t)| between consecutive levels.
  std::vector<double> uniform_cauchy;
  double tolerance = 0.0;
  bool converged = false;
};

struct CanonicalLift {
  RoughPath rough;
  CanonicalLiftReport report;
};

// Canonical lift under the Riemann-sum property: the second level is read
// from the finest-level integral prefix. Throws ConvergenceError when the
// two finest level integrals differ by more than tol in sup norm
// (default tol: 1e-4 * (1 + ||X||_inf^2)).
CanonicalLift canonical_lift(const CadlagPath& X, const PartitionSequence& S, double p,
                             double tol = -1.0);

// Exact lift of a path piecewise constant along P: consecutive second-level
// increments vanish and Chen reconstruction yields the finite left-point
// sums.
RoughPath lift_piecewise_constant(const CadlagPath& Xn, const Partition& P, double p);

// ||X - X~||_p + ||Xi - Xi~||_{p/2} over the common grid.
double rough_distance(const RoughPath& R1, const RoughPath& R2, double p);

// Restriction to a coarser partition: base values at the partition points,
// consecutive second-level blocks reconstructed through Chen's relation.
RoughPath restrict_rough(const RoughPath& R, const Partition& P);

struct RieOptions {
  double path_tol = -1.0;      // default 0.05 * (1 + ||X||_inf)
  double integral_tol = -1.0;  // default 1e-4 * (1 + ||X||_inf^2)
};

struct RieReport {
  std::vector<double> uniform_path_error;      // per level: ||X^n - X||_inf
  std::vector<double> uniform_integral_error;  // consecutive-level sup diffs
  double sup_increment_ratio = 0.0;            // sup |X_{s,t}|^p / w(s,t)
  double sup_remainder_ratio = 0.0;            // sup over (n,k,l)
  double best_scale = 0.0;  // factor on w that would bring both suprema to 1
  double path_tol = 0.0;
  double integral_tol = 0.0;
  bool pass = false;
};

// Checks the three conditions of the Riemann-sum property against the
// caller-supplied control function (the diagnostic fits a scale rather than
// searching for a control).
RieReport rie_diagnostic(const CadlagPath& X, const PartitionSequence& S, double p,
                         const ControlFunction& w, const RieOptions& opts = {});

// Smallest C with |sum_{j=k}^{l-1} Xi_{jh,(j+1)h}| <= C (l-k)^beta h^{2 alpha}
// over dyadic step multiples h of the (equidistant) base grid.
double davie_estimate(const RoughPath& R, double alpha, double beta);

struct JointLift {
  RoughPath lambda;                    // dimension d + e
  std::vector<int> levels;             // dyadic level indices of the report
  std::vector<Mat> quad_covar;         // <eta, W>^n_T per level (d x e)
  std::vector<double> quad_covar_norm;
  double fitted_decay_slope = 0.0;     // of -log2 |<eta,W>^n_T| vs n
};

// Joint lift of (eta, W) with blocks (eta^2, int eta (x) dW; W (x) eta -
// (int eta (x) dW)^T, bbW), all realized as exact left-point sums on the
// common grid, so Chen's relation holds by construction.
JointLift joint_lift_eta_w(const CadlagPath& eta, const CadlagPath& W,
                           const PartitionSequence& S, double p);

void write_roughpath_json(std::ostream& os, const RoughPath& R);
RoughPath read_roughpath_json(std::istream& is);
std::string rie_report_json(const RieReport& rep);

}  // namespace roughlab

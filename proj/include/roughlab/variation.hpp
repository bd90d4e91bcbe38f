#pragma once

#include <functional>

#include "roughlab/common.hpp"
#include "roughlab/path.hpp"

namespace roughlab {

// Exponent profile of the convergence analysis. p in (2,3) is the driver
// roughness, p_prime in (p,3) the output norm, q the Young exponent of the
// perturbation, r the remainder exponent, q1/q2 the regularity of the
// auxiliary paths A and H.
struct VarExponents {
  double p = 2.25;
  double p_prime = 2.75;
  double q = 1.4;
  double r = 1.5;
  double q1 = 1.0;
  double q2 = 1.0;

  // Controlled-path profile: r in [p/2, 2), 1/p + 1/r > 1, and the paired
  // q solves 1/p + 1/q = 1/r.
  void validate_controlled() const;
  // Rate profile: p' in (p, 3), q in (1, 2) with 1/p' + 1/q > 1.
  void validate_rate() const;
};

// Exact p-variation over grid partitions of [t_{i0}, t_{i1}], computed by
// dynamic programming; marked left limits enter as virtual points ordered
// immediately before their grid time. O(M^2) in the number of points, with
// a coarsening pre-pass (merging increments below 1e-9) when M exceeds 2^13.
double p_variation(const CadlagPath& X, double p, Index i0, Index i1);
double p_variation(const CadlagPath& X, double p);
double p_variation(const CadlagPath& X, double p, double s, double t);

// Oracle: enumerate all subsets of interior points (at most 14 points).
// Used only in tests.
double p_variation_brute(const CadlagPath& X, double p, Index i0, Index i1);
double p_variation_brute(const CadlagPath& X, double p);

// r-variation of a two-parameter function given by |Xi_{t_i,t_j}| for grid
// index pairs; the supremum runs over grid partitions evaluated at
// consecutive partition points.
double two_param_variation(const std::function<double(Index, Index)>& xi_norm,
                           Index n_points, double r);

// Empirical Hoelder constant max |X_{s,t}| / (t-s)^alpha over grid pairs;
// requires a path without marked jumps.
double holder_constant(const CadlagPath& X, double alpha);

struct CheckReport {
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = false;
};

std::string check_report_json(const CheckReport& rep);

// Verifies the interpolation estimate ||F||_{p'} <= ||F||_p^{p/p'} *
// osc(F)^{1-p/p'}, with osc the largest increment norm.
CheckReport interpolation_bound_check(const CadlagPath& F, double p, double p_prime);

// All-pairs variation table over a grid: table(i,j) = ||X||^q_{q,[t_i,t_j]}
// (q-th power). O(N^3) build, used by control functions and diagnostics.
class VariationTable {
 public:
  VariationTable(const CadlagPath& X, double q, Index max_points = 512);
  double value(Index i, Index j) const { return table_(i, j); }
  Index size() const { return table_.rows(); }

 private:
  Mat table_;
};

}  // namespace roughlab

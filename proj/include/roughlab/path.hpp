#pragma once

#include <functional>
#include <iosfwd>
#include <map>

#include "roughlab/common.hpp"
#include "roughlab/partition.hpp"

namespace roughlab {

// A d-dimensional cadlag path sampled on a finite grid. Values are stored
// one column per grid time; left-limit values are stored only at marked
// jump indices. At unmarked indices the left limit equals the stored value.
class CadlagPath {
 public:
  CadlagPath() = default;
  CadlagPath(Partition grid, Mat values, std::map<Index, Vec> left_values = {});

  const Partition& grid() const { return grid_; }
  Index dim() const { return values_.rows(); }
  Index size() const { return values_.cols(); }
  double time(Index i) const { return grid_[i]; }

  const Mat& values() const { return values_; }
  Eigen::Ref<const Vec> value(Index i) const { return values_.col(i); }
  // Left limit at grid index i (stored value when unmarked).
  Vec left_value(Index i) const;
  bool has_jump_at(Index i) const { return left_values_.count(i) > 0; }
  const std::map<Index, Vec>& marked_jumps() const { return left_values_; }

  // Cadlag evaluation at an arbitrary time: value at the largest grid
  // time <= t.
  Vec value_at_time(double t) const { return values_.col(grid_.floor_index(t)); }

  // Path sup norm, max over grid values and marked left limits.
  double sup_norm() const;
  // Largest increment norm max_{i<j} |X_{t_j} - X_{t_i}| including marked
  // left limits; the sup factor of the interpolation estimate.
  double oscillation() const;

  std::vector<double> jump_times() const;

 private:
  Partition grid_;
  Mat values_;
  std::map<Index, Vec> left_values_;
};

CadlagPath constant_path(const Partition& grid, const Vec& value);
// Scalar path t -> f(t) evaluated on the grid (continuous convention).
CadlagPath scalar_path(const Partition& grid, const std::function<double(double)>& f);

// Piecewise constant discretization X^n along P (P must be a subset of
// X's grid): X^n_t = X at the largest partition point <= t, except
// X^n_T = X_T; jumps are marked where the held value changes.
CadlagPath discretize_piecewise_constant(const CadlagPath& X, const Partition& P);

// Time discretization path along P, sampled on `grid` (grid must contain P):
// gamma_t = largest partition point <= t, gamma_T = T.
CadlagPath gamma_path(const Partition& P, const Partition& grid);
inline CadlagPath gamma_path(const Partition& P) { return gamma_path(P, P); }
double gamma_at(const Partition& P, double t);

// Sup distance over the common grid including marked left limits.
double sup_distance(const CadlagPath& F, const CadlagPath& G);

// Sum of two paths on the same grid (left limits handled per convention).
CadlagPath path_sum(const CadlagPath& F, const CadlagPath& G, double scale_g = 1.0);
// Difference of values of F and G at the given grid indices of F's grid,
// as a path on those times (used for scheme-error norms).
CadlagPath restrict_to(const CadlagPath& X, const Partition& P);

// CSV interchange: header `t,x1,...,xd,pre_x1,...,pre_xd`; the pre columns
// carry values only on jump rows.
void write_path_csv(std::ostream& os, const CadlagPath& path);
CadlagPath read_path_csv(std::istream& is);

}  // namespace roughlab

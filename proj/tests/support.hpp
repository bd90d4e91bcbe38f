#pragma once

#include <cstdint>
#include <map>

#include "roughlab/path.hpp"
#include "roughlab/rng.hpp"

namespace roughlab::testing {

// Random cadlag path on a random grid: Gaussian wiggle plus occasional
// marked jumps. Deterministic per seed.
inline CadlagPath random_cadlag_path(std::uint64_t seed, Index n_points, Index dim,
                                     double jump_prob = 0.2, Index max_jumps = 1 << 20) {
  std::vector<double> ts;
  ts.push_back(0.0);
  double t = 0.0;
  for (Index i = 1; i < n_points; ++i) {
    t += 0.05 + rng::uniform(seed, 100, static_cast<std::uint64_t>(i));
    ts.push_back(t);
  }
  Partition grid(std::move(ts));
  Mat vals(dim, n_points);
  std::map<Index, Vec> lefts;
  std::uint64_t ctr = 0;
  for (Index c = 0; c < dim; ++c) vals(c, 0) = rng::gaussian(seed, 101, ctr++);
  for (Index i = 1; i < n_points; ++i) {
    for (Index c = 0; c < dim; ++c)
      vals(c, i) = vals(c, i - 1) + 0.3 * rng::gaussian(seed, 101, ctr++);
    if (static_cast<Index>(lefts.size()) < max_jumps &&
        rng::uniform(seed, 102, static_cast<std::uint64_t>(i)) < jump_prob) {
      Vec left = vals.col(i);
      for (Index c = 0; c < dim; ++c) vals(c, i) += rng::gaussian(seed, 103, ctr++);
      lefts.emplace(i, left);
    }
  }
  return CadlagPath(std::move(grid), std::move(vals), std::move(lefts));
}

// Random continuous path on [0, 1] with an equidistant grid.
inline CadlagPath random_continuous_path(std::uint64_t seed, Index n_points, Index dim) {
  Partition grid = Partition::equidistant(n_points - 1, 1.0);
  Mat vals(dim, n_points);
  std::uint64_t ctr = 0;
  vals.col(0).setZero();
  const double sd = std::sqrt(1.0 / static_cast<double>(n_points - 1));
  for (Index i = 1; i < n_points; ++i)
    for (Index c = 0; c < dim; ++c)
      vals(c, i) = vals(c, i - 1) + sd * rng::gaussian(seed, 104, ctr++);
  return CadlagPath(std::move(grid), std::move(vals));
}

}  // namespace roughlab::testing

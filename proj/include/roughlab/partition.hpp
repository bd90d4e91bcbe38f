#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "roughlab/common.hpp"

namespace roughlab {

// A finite partition {0 = t_0 < t_1 < ... < t_N = T} of [0, T].
class Partition {
 public:
  Partition() = default;
  explicit Partition(std::vector<double> times);

  const std::vector<double>& times() const { return times_; }
  Index size() const { return static_cast<Index>(times_.size()); }
  double operator[](Index i) const { return times_[static_cast<std::size_t>(i)]; }
  double horizon() const { return times_.back(); }
  double mesh() const;

  // Index of t in this partition, or -1 if t is not a partition time
  // (matching within kTimeTol).
  Index find(double t) const;
  bool contains(double t) const { return find(t) >= 0; }
  // Index of the largest partition time <= t.
  Index floor_index(double t) const;

  static Partition equidistant(Index n_intervals, double T);
  static Partition dyadic(int n, double T);

 private:
  std::vector<double> times_;
};

// Sorted union with deduplication at kTimeTol.
Partition union_of(const Partition& a, const Partition& b);

bool is_subset(const Partition& coarse, const Partition& fine);
// Maps each time of `coarse` to its index in `fine`; throws if not a subset.
std::vector<Index> subset_indices(const Partition& coarse, const Partition& fine);

enum class PartitionFamily { Equidistant, Dyadic, LevyAugmented, StoppingTime, Custom };

std::string to_string(PartitionFamily f);
PartitionFamily partition_family_from_string(const std::string& s);

// make_partition covers the data-free families. Equidistant level n has n
// intervals, dyadic level n has 2^n; levy-augmented is dyadic union the
// supplied jump times.
Partition make_partition(PartitionFamily family, int n, double T,
                         const std::vector<double>& extra = {});

// An ordered list of partitions of the same [0, T] with non-increasing mesh;
// the final mesh must be below the declared threshold.
class PartitionSequence {
 public:
  PartitionSequence(std::vector<Partition> levels, PartitionFamily family,
                    double mesh_threshold);

  const std::vector<Partition>& levels() const { return levels_; }
  const Partition& level(std::size_t i) const { return levels_[i]; }
  const Partition& finest() const { return levels_.back(); }
  std::size_t count() const { return levels_.size(); }
  PartitionFamily family() const { return family_; }
  double mesh_threshold() const { return mesh_threshold_; }

  static PartitionSequence dyadic(int n_min, int n_max, double T);

 private:
  std::vector<Partition> levels_;
  PartitionFamily family_ = PartitionFamily::Custom;
  double mesh_threshold_ = 0.0;
};

struct JumpExhaustionResult {
  bool exhausted = true;
  // First violating (time, level position) when not exhausted.
  double witness_time = 0.0;
  std::size_t witness_level = 0;
};

// Tests J subset of liminf_n P^n over the stored levels: every t in J must
// belong to all levels from some index on.
JumpExhaustionResult jumps_exhausted(const std::vector<double>& jump_times,
                                     const PartitionSequence& seq);

// File format: one time per line.
void write_partition(std::ostream& os, const Partition& p);
Partition read_partition(std::istream& is);

}  // namespace roughlab

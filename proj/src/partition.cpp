#include "roughlab/partition.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <locale>
#include <ostream>

namespace roughlab {

Partition::Partition(std::vector<double> times) : times_(std::move(times)) {
  require(times_.size() >= 2, "partition needs at least 2 points");
  require(std::abs(times_.front()) <= kTimeTol, "partition must start at 0");
  times_.front() = 0.0;
  for (std::size_t i = 1; i < times_.size(); ++i)
    require(times_[i] > times_[i - 1] + kTimeTol, "partition times must be strictly increasing");
  require(times_.back() > 0.0, "partition horizon must be positive");
}

double Partition::mesh() const {
  double m = 0.0;
  for (std::size_t i = 1; i < times_.size(); ++i) m = std::max(m, times_[i] - times_[i - 1]);
  return m;
}

Index Partition::find(double t) const {
  auto it = std::lower_bound(times_.begin(), times_.end(), t - kTimeTol);
  if (it == times_.end() || std::abs(*it - t) > kTimeTol) return -1;
  return static_cast<Index>(it - times_.begin());
}

Index Partition::floor_index(double t) const {
  require(t >= -kTimeTol && t <= times_.back() + kTimeTol, "time outside [0, T]");
  auto it = std::upper_bound(times_.begin(), times_.end(), t + kTimeTol);
  return static_cast<Index>(it - times_.begin()) - 1;
}

Partition Partition::equidistant(Index n_intervals, double T) {
  require(n_intervals >= 1, "need at least one interval");
  require(T > 0.0, "horizon must be positive");
  std::vector<double> ts(static_cast<std::size_t>(n_intervals) + 1);
  for (Index k = 0; k <= n_intervals; ++k)
    ts[static_cast<std::size_t>(k)] = static_cast<double>(k) * T / static_cast<double>(n_intervals);
  ts.back() = T;
  return Partition(std::move(ts));
}

Partition Partition::dyadic(int n, double T) {
  require(n >= 0, "dyadic level must be >= 0");
  return equidistant(Index{1} << n, T);
}

Partition union_of(const Partition& a, const Partition& b) {
  require(std::abs(a.horizon() - b.horizon()) <= kTimeTol, "horizons differ");
  std::vector<double> merged;
  merged.reserve(a.times().size() + b.times().size());
  std::size_t i = 0, j = 0;
  auto push = [&merged](double t) {
    if (merged.empty() || t > merged.back() + kTimeTol) merged.push_back(t);
  };
  while (i < a.times().size() && j < b.times().size()) {
    double ta = a.times()[i], tb = b.times()[j];
    if (ta < tb - kTimeTol) { push(ta); ++i; }
    else if (tb < ta - kTimeTol) { push(tb); ++j; }
    else { push(ta); ++i; ++j; }
  }
  while (i < a.times().size()) push(a.times()[i++]);
  while (j < b.times().size()) push(b.times()[j++]);
  return Partition(std::move(merged));
}

bool is_subset(const Partition& coarse, const Partition& fine) {
  for (double t : coarse.times())
    if (fine.find(t) < 0) return false;
  return true;
}

std::vector<Index> subset_indices(const Partition& coarse, const Partition& fine) {
  std::vector<Index> idx;
  idx.reserve(coarse.times().size());
  for (double t : coarse.times()) {
    Index i = fine.find(t);
    require(i >= 0, "partition is not a subset of the grid");
    idx.push_back(i);
  }
  return idx;
}

std::string to_string(PartitionFamily f) {
  switch (f) {
    case PartitionFamily::Equidistant: return "equidistant";
    case PartitionFamily::Dyadic: return "dyadic";
    case PartitionFamily::LevyAugmented: return "levy-augmented";
    case PartitionFamily::StoppingTime: return "stopping-time";
    case PartitionFamily::Custom: return "custom";
  }
  return "custom";
}

PartitionFamily partition_family_from_string(const std::string& s) {
  if (s == "equidistant") return PartitionFamily::Equidistant;
  if (s == "dyadic") return PartitionFamily::Dyadic;
  if (s == "levy-augmented") return PartitionFamily::LevyAugmented;
  if (s == "stopping-time") return PartitionFamily::StoppingTime;
  if (s == "custom") return PartitionFamily::Custom;
  throw std::invalid_argument("unknown partition family: " + s);
}

Partition make_partition(PartitionFamily family, int n, double T,
                         const std::vector<double>& extra) {
  require(n >= 0, "level index must be >= 0");
  require(T > 0.0, "horizon must be positive");
  switch (family) {
    case PartitionFamily::Equidistant:
      return Partition::equidistant(std::max<Index>(1, n), T);
    case PartitionFamily::Dyadic:
      return Partition::dyadic(n, T);
    case PartitionFamily::LevyAugmented: {
      for (double t : extra)
        require(t > kTimeTol && t <= T + kTimeTol, "extra time outside (0, T]");
      std::vector<double> ex(extra);
      std::sort(ex.begin(), ex.end());
      std::vector<double> with_ends;
      with_ends.push_back(0.0);
      for (double t : ex)
        if (with_ends.empty() || t > with_ends.back() + kTimeTol) with_ends.push_back(std::min(t, T));
      if (with_ends.back() < T - kTimeTol) with_ends.push_back(T);
      return union_of(Partition::dyadic(n, T), Partition(std::move(with_ends)));
    }
    case PartitionFamily::StoppingTime:
      throw std::invalid_argument("stopping-time partitions are built from a path; use build_stopping_partition");
    case PartitionFamily::Custom:
      throw std::invalid_argument("custom partitions are constructed directly");
  }
  throw std::invalid_argument("unknown partition family");
}

PartitionSequence::PartitionSequence(std::vector<Partition> levels, PartitionFamily family,
                                     double mesh_threshold)
    : levels_(std::move(levels)), family_(family), mesh_threshold_(mesh_threshold) {
  require(!levels_.empty(), "partition sequence needs at least one level");
  double T = levels_.front().horizon();
  double prev = levels_.front().mesh();
  for (std::size_t i = 1; i < levels_.size(); ++i) {
    require(std::abs(levels_[i].horizon() - T) <= kTimeTol, "levels have differing horizons");
    double m = levels_[i].mesh();
    require(m <= prev + kTimeTol, "level meshes must be non-increasing");
    prev = m;
  }
  require(levels_.back().mesh() <= mesh_threshold + kTimeTol,
          "finest mesh exceeds the declared threshold");
}

PartitionSequence PartitionSequence::dyadic(int n_min, int n_max, double T) {
  require(n_min >= 0 && n_max >= n_min, "invalid dyadic level range");
  std::vector<Partition> levels;
  for (int n = n_min; n <= n_max; ++n) levels.push_back(Partition::dyadic(n, T));
  double threshold = std::ldexp(T, -n_max);
  return PartitionSequence(std::move(levels), PartitionFamily::Dyadic, threshold);
}

JumpExhaustionResult jumps_exhausted(const std::vector<double>& jump_times,
                                     const PartitionSequence& seq) {
  JumpExhaustionResult res;
  std::vector<double> sorted(jump_times);
  std::sort(sorted.begin(), sorted.end());
  for (double t : sorted) {
    // t must belong to every level from some index on; with finitely many
    // stored levels this means: some suffix of levels all contain t.
    bool ok = false;
    std::size_t first_absent = 0;
    for (std::size_t m = 0; m < seq.count() && !ok; ++m) {
      bool in_all = true;
      for (std::size_t i = m; i < seq.count(); ++i) {
        if (!seq.level(i).contains(t)) { in_all = false; break; }
      }
      ok = in_all;
    }
    if (!ok) {
      for (std::size_t i = 0; i < seq.count(); ++i) {
        if (!seq.level(i).contains(t)) { first_absent = i; break; }
      }
      res.exhausted = false;
      res.witness_time = t;
      res.witness_level = first_absent;
      return res;
    }
  }
  return res;
}

void write_partition(std::ostream& os, const Partition& p) {
  os.imbue(std::locale::classic());
  os.precision(17);
  for (double t : p.times()) os << t << "\n";
}

Partition read_partition(std::istream& is) {
  std::vector<double> ts;
  double t;
  while (is >> t) ts.push_back(t);
  return Partition(std::move(ts));
}

}  // namespace roughlab

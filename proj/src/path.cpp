#include "roughlab/path.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <istream>
#include <locale>
#include <ostream>
#include <sstream>

namespace roughlab {

CadlagPath::CadlagPath(Partition grid, Mat values, std::map<Index, Vec> left_values)
    : grid_(std::move(grid)), values_(std::move(values)), left_values_(std::move(left_values)) {
  require(values_.cols() == grid_.size(), "one value per grid time required");
  require(values_.rows() >= 1, "path dimension must be >= 1");
  for (const auto& [idx, v] : left_values_) {
    require(idx >= 1 && idx < grid_.size(), "jump index must be interior or terminal");
    require(v.size() == values_.rows(), "left value dimension mismatch");
  }
}

Vec CadlagPath::left_value(Index i) const {
  auto it = left_values_.find(i);
  if (it != left_values_.end()) return it->second;
  return values_.col(i);
}

double CadlagPath::sup_norm() const {
  double m = 0.0;
  for (Index i = 0; i < size(); ++i) m = std::max(m, values_.col(i).norm());
  for (const auto& [idx, v] : left_values_) m = std::max(m, v.norm());
  return m;
}

double CadlagPath::oscillation() const {
  std::vector<Vec> pts;
  pts.reserve(static_cast<std::size_t>(size()) + left_values_.size());
  for (Index i = 0; i < size(); ++i) {
    if (has_jump_at(i)) pts.push_back(left_value(i));
    pts.push_back(values_.col(i));
  }
  if (dim() == 1) {
    double lo = pts.front()(0), hi = lo;
    for (const Vec& v : pts) { lo = std::min(lo, v(0)); hi = std::max(hi, v(0)); }
    return hi - lo;
  }
  // diameter of the visited point set; exact pair scan (paths fed through
  // the interpolation check are test-scale)
  double m = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      m = std::max(m, (pts[j] - pts[i]).norm());
  return m;
}

std::vector<double> CadlagPath::jump_times() const {
  std::vector<double> ts;
  ts.reserve(left_values_.size());
  for (const auto& [idx, v] : left_values_)
    if ((values_.col(idx) - v).norm() > 0.0) ts.push_back(grid_[idx]);
  return ts;
}

CadlagPath constant_path(const Partition& grid, const Vec& value) {
  Mat vals(value.size(), grid.size());
  for (Index i = 0; i < grid.size(); ++i) vals.col(i) = value;
  return CadlagPath(grid, std::move(vals));
}

CadlagPath scalar_path(const Partition& grid, const std::function<double(double)>& f) {
  Mat vals(1, grid.size());
  for (Index i = 0; i < grid.size(); ++i) vals(0, i) = f(grid[i]);
  return CadlagPath(grid, std::move(vals));
}

CadlagPath discretize_piecewise_constant(const CadlagPath& X, const Partition& P) {
  const Partition& G = X.grid();
  std::vector<Index> pidx = subset_indices(P, G);
  Mat vals(X.dim(), G.size());
  std::size_t k = 0;
  for (Index i = 0; i < G.size(); ++i) {
    while (k + 1 < pidx.size() && pidx[k + 1] <= i) ++k;
    vals.col(i) = X.value(pidx[k]);
  }
  vals.col(G.size() - 1) = X.value(G.size() - 1);  // X^n_T = X_T
  std::map<Index, Vec> lefts;
  for (Index i = 1; i < G.size(); ++i)
    if ((vals.col(i) - vals.col(i - 1)).norm() > 0.0) lefts.emplace(i, vals.col(i - 1));
  return CadlagPath(G, std::move(vals), std::move(lefts));
}

double gamma_at(const Partition& P, double t) {
  if (std::abs(t - P.horizon()) <= kTimeTol) return P.horizon();
  return P[P.floor_index(t)];
}

CadlagPath gamma_path(const Partition& P, const Partition& grid) {
  require(is_subset(P, grid), "gamma grid must contain the partition");
  Mat vals(1, grid.size());
  for (Index i = 0; i < grid.size(); ++i) vals(0, i) = gamma_at(P, grid[i]);
  std::map<Index, Vec> lefts;
  for (Index i = 1; i < grid.size(); ++i) {
    if (vals(0, i) != vals(0, i - 1)) {
      Vec l(1);
      l(0) = vals(0, i - 1);
      lefts.emplace(i, std::move(l));
    }
  }
  return CadlagPath(grid, std::move(vals), std::move(lefts));
}

double sup_distance(const CadlagPath& F, const CadlagPath& G) {
  require(F.dim() == G.dim(), "dimension mismatch");
  require(F.size() == G.size(), "grid mismatch");
  for (Index i = 0; i < F.size(); ++i)
    require(std::abs(F.time(i) - G.time(i)) <= kTimeTol, "grid mismatch");
  double m = 0.0;
  for (Index i = 0; i < F.size(); ++i)
    m = std::max(m, (F.value(i) - G.value(i)).norm());
  for (const auto& [idx, v] : F.marked_jumps())
    m = std::max(m, (v - G.left_value(idx)).norm());
  for (const auto& [idx, v] : G.marked_jumps())
    m = std::max(m, (F.left_value(idx) - v).norm());
  return m;
}

CadlagPath path_sum(const CadlagPath& F, const CadlagPath& G, double scale_g) {
  require(F.dim() == G.dim() && F.size() == G.size(), "path_sum shape mismatch");
  Mat vals = F.values() + scale_g * G.values();
  std::map<Index, Vec> lefts;
  for (const auto& [idx, v] : F.marked_jumps()) lefts[idx] = v + scale_g * G.left_value(idx);
  for (const auto& [idx, v] : G.marked_jumps())
    if (!lefts.count(idx)) lefts[idx] = F.left_value(idx) + scale_g * v;
  return CadlagPath(F.grid(), std::move(vals), std::move(lefts));
}

CadlagPath restrict_to(const CadlagPath& X, const Partition& P) {
  std::vector<Index> idx = subset_indices(P, X.grid());
  Mat vals(X.dim(), P.size());
  for (Index i = 0; i < P.size(); ++i) vals.col(i) = X.value(idx[static_cast<std::size_t>(i)]);
  std::map<Index, Vec> lefts;
  for (Index i = 0; i < P.size(); ++i) {
    Index gi = idx[static_cast<std::size_t>(i)];
    if (X.has_jump_at(gi) && i >= 1) lefts.emplace(i, X.left_value(gi));
  }
  return CadlagPath(P, std::move(vals), std::move(lefts));
}

void write_path_csv(std::ostream& os, const CadlagPath& path) {
  os.imbue(std::locale::classic());
  os.precision(17);
  Index d = path.dim();
  os << "t";
  for (Index c = 0; c < d; ++c) os << ",x" << (c + 1);
  for (Index c = 0; c < d; ++c) os << ",pre_x" << (c + 1);
  os << "\n";
  for (Index i = 0; i < path.size(); ++i) {
    os << path.time(i);
    for (Index c = 0; c < d; ++c) os << "," << path.value(i)(c);
    if (path.has_jump_at(i)) {
      Vec l = path.left_value(i);
      for (Index c = 0; c < d; ++c) os << "," << l(c);
    } else {
      for (Index c = 0; c < d; ++c) os << ",";
    }
    os << "\n";
  }
}

CadlagPath read_path_csv(std::istream& is) {
  std::string line;
  require(static_cast<bool>(std::getline(is, line)), "empty path CSV");
  Index d = 0;
  {
    std::stringstream hs(line);
    std::string tok;
    std::vector<std::string> cols;
    while (std::getline(hs, tok, ',')) cols.push_back(tok);
    require(!cols.empty() && cols[0] == "t", "path CSV must start with a 't' column");
    for (std::size_t c = 1; c < cols.size(); ++c)
      if (cols[c].rfind("pre_", 0) != 0) ++d;
    require(d >= 1, "path CSV has no value columns");
  }
  std::vector<double> times;
  std::vector<Vec> vals;
  std::map<Index, Vec> lefts;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::stringstream ls(line);
    std::string tok;
    std::vector<std::string> cells;
    while (std::getline(ls, tok, ',')) cells.push_back(tok);
    while (cells.size() < static_cast<std::size_t>(1 + 2 * d)) cells.emplace_back();
    times.push_back(std::stod(cells[0]));
    Vec v(d);
    for (Index c = 0; c < d; ++c) v(c) = std::stod(cells[static_cast<std::size_t>(1 + c)]);
    vals.push_back(std::move(v));
    bool has_pre = !cells[static_cast<std::size_t>(1 + d)].empty();
    if (has_pre) {
      Vec l(d);
      for (Index c = 0; c < d; ++c) l(c) = std::stod(cells[static_cast<std::size_t>(1 + d + c)]);
      lefts.emplace(static_cast<Index>(times.size()) - 1, std::move(l));
    }
  }
  Mat m(d, static_cast<Index>(vals.size()));
  for (std::size_t i = 0; i < vals.size(); ++i) m.col(static_cast<Index>(i)) = vals[i];
  return CadlagPath(Partition(std::move(times)), std::move(m), std::move(lefts));
}

}  // namespace roughlab

#include "roughlab/variation.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "json.hpp"

namespace roughlab {

void VarExponents::validate_controlled() const {
  require(p >= 2.0 && p < 3.0, "p must lie in [2, 3)");
  require(r >= p / 2.0 && r < 2.0, "r must lie in [p/2, 2)");
  require(1.0 / p + 1.0 / r > 1.0, "need 1/p + 1/r > 1");
  require(q1 >= 1.0 && q1 < 2.0 && q2 >= 1.0 && q2 < 2.0, "q1, q2 must lie in [1, 2)");
}

void VarExponents::validate_rate() const {
  require(p > 2.0 && p < 3.0, "p must lie in (2, 3)");
  require(p_prime > p && p_prime < 3.0, "p' must lie in (p, 3)");
  require(q > 1.0 && q < 2.0, "q must lie in (1, 2)");
  require(1.0 / p_prime + 1.0 / q > 1.0, "need 1/p' + 1/q > 1");
}

namespace {

// Ordered point list over [i0, i1] with marked left limits inserted as
// virtual points immediately before their grid time. The left limit at i0
// lies outside the interval and is excluded.
std::vector<Vec> augmented_points(const CadlagPath& X, Index i0, Index i1) {
  std::vector<Vec> pts;
  pts.reserve(static_cast<std::size_t>(i1 - i0) + 1);
  for (Index i = i0; i <= i1; ++i) {
    if (i > i0 && X.has_jump_at(i)) pts.push_back(X.left_value(i));
    pts.push_back(X.value(i));
  }
  return pts;
}

void coarsen(std::vector<Vec>& pts, double tol) {
  std::vector<Vec> out;
  out.reserve(pts.size());
  out.push_back(pts.front());
  for (std::size_t i = 1; i + 1 < pts.size(); ++i)
    if ((pts[i] - out.back()).norm() >= tol) out.push_back(pts[i]);
  out.push_back(pts.back());
  pts.swap(out);
}

double dp_variation(const std::vector<Vec>& pts, double p) {
  const std::size_t n = pts.size();
  if (n < 2) return 0.0;
  std::vector<double> best(n, 0.0);
  for (std::size_t j = 1; j < n; ++j) {
    double b = 0.0;
    for (std::size_t i = 0; i < j; ++i) {
      double v = best[i] + std::pow((pts[j] - pts[i]).norm(), p);
      if (v > b) b = v;
    }
    best[j] = b;
  }
  return std::pow(best[n - 1], 1.0 / p);
}

// Exact DP up to 2^13 points; larger grids get the coarsening pre-pass and
// still run, with a hard safety bound against quadratic blowup.
constexpr Index kDpExact = Index{1} << 13;
constexpr Index kDpHardCap = Index{1} << 15;

}  // namespace

double p_variation(const CadlagPath& X, double p, Index i0, Index i1) {
  require(p >= 1.0, "p must be >= 1");
  require(i0 >= 0 && i1 < X.size() && i0 < i1, "invalid grid interval");
  std::vector<Vec> pts = augmented_points(X, i0, i1);
  if (static_cast<Index>(pts.size()) > kDpExact) coarsen(pts, 1e-9);
  require(static_cast<Index>(pts.size()) <= kDpHardCap,
          "grid too large for the p-variation DP (hard cap 2^15 after coarsening)");
  return dp_variation(pts, p);
}

double p_variation(const CadlagPath& X, double p) {
  return p_variation(X, p, 0, X.size() - 1);
}

double p_variation(const CadlagPath& X, double p, double s, double t) {
  Index i0 = X.grid().find(s), i1 = X.grid().find(t);
  require(i0 >= 0 && i1 >= 0, "interval endpoints not on grid");
  return p_variation(X, p, i0, i1);
}

double p_variation_brute(const CadlagPath& X, double p, Index i0, Index i1) {
  require(p >= 1.0, "p must be >= 1");
  std::vector<Vec> pts = augmented_points(X, i0, i1);
  const std::size_t n = pts.size();
  require(n <= 14, "too many points for brute-force enumeration");
  if (n < 2) return 0.0;
  const std::size_t interior = n - 2;
  double best = 0.0;
  for (std::size_t mask = 0; mask < (std::size_t{1} << interior); ++mask) {
    double sum = 0.0;
    Vec prev = pts[0];
    for (std::size_t i = 0; i < interior; ++i) {
      if (mask & (std::size_t{1} << i)) {
        sum += std::pow((pts[i + 1] - prev).norm(), p);
        prev = pts[i + 1];
      }
    }
    sum += std::pow((pts[n - 1] - prev).norm(), p);
    best = std::max(best, sum);
  }
  return std::pow(best, 1.0 / p);
}

double p_variation_brute(const CadlagPath& X, double p) {
  return p_variation_brute(X, p, 0, X.size() - 1);
}

double two_param_variation(const std::function<double(Index, Index)>& xi_norm,
                           Index n_points, double r) {
  require(r >= 1.0, "r must be >= 1");
  require(n_points >= 2, "need at least 2 grid points");
  std::vector<double> best(static_cast<std::size_t>(n_points), 0.0);
  for (Index j = 1; j < n_points; ++j) {
    double b = 0.0;
    for (Index i = 0; i < j; ++i) {
      double v = best[static_cast<std::size_t>(i)] + std::pow(xi_norm(i, j), r);
      if (v > b) b = v;
    }
    best[static_cast<std::size_t>(j)] = b;
  }
  return std::pow(best.back(), 1.0 / r);
}

double holder_constant(const CadlagPath& X, double alpha) {
  require(alpha > 0.0 && alpha <= 1.0, "alpha must lie in (0, 1]");
  require(X.marked_jumps().empty(), "Hoelder constant requires a continuous path");
  double c = 0.0;
  for (Index i = 0; i < X.size(); ++i) {
    for (Index j = i + 1; j < X.size(); ++j) {
      double dt = X.time(j) - X.time(i);
      c = std::max(c, (X.value(j) - X.value(i)).norm() / std::pow(dt, alpha));
    }
  }
  return c;
}

std::string check_report_json(const CheckReport& rep) {
  nlohmann::json j;
  j["lhs"] = rep.lhs;
  j["rhs"] = rep.rhs;
  j["pass"] = rep.pass;
  return j.dump();
}

CheckReport interpolation_bound_check(const CadlagPath& F, double p, double p_prime) {
  require(p < p_prime, "need p < p'");
  CheckReport rep;
  rep.lhs = p_variation(F, p_prime);
  double vp = p_variation(F, p);
  double osc = F.oscillation();
  rep.rhs = std::pow(vp, p / p_prime) * std::pow(osc, 1.0 - p / p_prime);
  rep.pass = rep.lhs <= rep.rhs * (1.0 + 1e-10) + 1e-300;
  return rep;
}

VariationTable::VariationTable(const CadlagPath& X, double q, Index max_points) {
  require(q >= 1.0, "q must be >= 1");
  const Index n = X.size();
  require(n <= max_points, "grid too large for the all-pairs variation table");
  // Augmented global list with a map from grid index to its position.
  std::vector<Vec> pts;
  std::vector<Index> pos(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    if (i > 0 && X.has_jump_at(i)) pts.push_back(X.left_value(i));
    pos[static_cast<std::size_t>(i)] = static_cast<Index>(pts.size());
    pts.push_back(X.value(i));
  }
  const Index m = static_cast<Index>(pts.size());
  table_ = Mat::Zero(n, n);
  std::vector<double> best(static_cast<std::size_t>(m));
  for (Index a = 0; a < n; ++a) {
    const Index pa = pos[static_cast<std::size_t>(a)];
    std::fill(best.begin(), best.end(), 0.0);
    for (Index j = pa + 1; j < m; ++j) {
      double b = 0.0;
      for (Index i = pa; i < j; ++i) {
        double v = best[static_cast<std::size_t>(i)] +
                   std::pow((pts[static_cast<std::size_t>(j)] - pts[static_cast<std::size_t>(i)]).norm(), q);
        if (v > b) b = v;
      }
      best[static_cast<std::size_t>(j)] = b;
    }
    for (Index bidx = a + 1; bidx < n; ++bidx)
      table_(a, bidx) = best[static_cast<std::size_t>(pos[static_cast<std::size_t>(bidx)])];
  }
}

}  // namespace roughlab

#include "roughlab/lift.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>

#include "json.hpp"
#include "roughlab/variation.hpp"

namespace roughlab {

RoughPath::RoughPath(CadlagPath base, std::vector<Mat> second_level, double p)
    : base_(std::move(base)), second_(std::move(second_level)), p_(p) {
  const Index n = base_.size();
  const Index d = base_.dim();
  require(static_cast<Index>(second_.size()) == n - 1,
          "second level must hold one matrix per consecutive grid pair");
  for (const Mat& m : second_)
    require(m.rows() == d && m.cols() == d, "second-level block shape mismatch");
  prefix_second_.resize(static_cast<std::size_t>(n));
  prefix_cross_.resize(static_cast<std::size_t>(n));
  Mat s1 = Mat::Zero(d, d), s2 = Mat::Zero(d, d);
  prefix_second_[0] = s1;
  prefix_cross_[0] = s2;
  for (Index i = 0; i + 1 < n; ++i) {
    s1 += second_[static_cast<std::size_t>(i)];
    s2 += base_.value(i) * (base_.value(i + 1) - base_.value(i)).transpose();
    prefix_second_[static_cast<std::size_t>(i) + 1] = s1;
    prefix_cross_[static_cast<std::size_t>(i) + 1] = s2;
  }
}

Mat RoughPath::chen(Index k, Index l) const {
  require(k >= 0 && l < size() && k <= l, "chen indices out of range");
  const Index d = dim();
  if (k == l) return Mat::Zero(d, d);
  if (l == k + 1) return second_[static_cast<std::size_t>(k)];
  Mat out = prefix_second_[static_cast<std::size_t>(l)] - prefix_second_[static_cast<std::size_t>(k)] +
            prefix_cross_[static_cast<std::size_t>(l)] - prefix_cross_[static_cast<std::size_t>(k)];
  out.noalias() -= base_.value(k) * (base_.value(l) - base_.value(k)).transpose();
  return out;
}

Mat RoughPath::chen_at(double s, double t) const {
  Index k = base_.grid().find(s), l = base_.grid().find(t);
  require(k >= 0 && l >= 0, "times off the grid");
  return chen(k, l);
}

Mat chen_eval(const RoughPath& R, double s, double t) { return R.chen_at(s, t); }

Mat iterated_riemann(const CadlagPath& X, const Partition& P, double t) {
  require(X.grid().find(t) >= 0, "t must be a grid time");
  std::vector<Index> pidx = subset_indices(P, X.grid());
  const Index d = X.dim();
  Mat sum = Mat::Zero(d, d);
  for (std::size_t k = 0; k + 1 < pidx.size(); ++k) {
    double a = std::min(P[static_cast<Index>(k)], t);
    double b = std::min(P[static_cast<Index>(k) + 1], t);
    if (b <= a) break;
    Vec inc = X.value_at_time(b) - X.value_at_time(a);
    sum.noalias() += X.value(pidx[k]) * inc.transpose();
  }
  return sum;
}

std::vector<Mat> iterated_riemann_prefix(const CadlagPath& X, const Partition& P) {
  std::vector<Index> pidx = subset_indices(P, X.grid());
  const Index n = X.size();
  const Index d = X.dim();
  std::vector<Mat> out(static_cast<std::size_t>(n));
  Mat acc = Mat::Zero(d, d);
  out[0] = acc;
  std::size_t k = 0;
  for (Index i = 0; i + 1 < n; ++i) {
    while (k + 1 < pidx.size() && pidx[k + 1] <= i) ++k;
    acc.noalias() += X.value(pidx[k]) * (X.value(i + 1) - X.value(i)).transpose();
    out[static_cast<std::size_t>(i) + 1] = acc;
  }
  return out;
}

namespace {

double sup_diff(const std::vector<Mat>& a, const std::vector<Mat>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, (a[i] - b[i]).norm());
  return m;
}

}  // namespace

CanonicalLift canonical_lift(const CadlagPath& X, const PartitionSequence& S, double p,
                             double tol) {
  require(S.count() >= 2, "canonical lift needs at least two levels");
  if (tol < 0.0) {
    double sn = X.sup_norm();
    tol = 1e-4 * (1.0 + sn * sn);
  }
  CanonicalLift out;
  out.report.tolerance = tol;
  std::vector<Mat> prev = iterated_riemann_prefix(X, S.level(0));
  std::vector<Mat> fin;
  for (std::size_t n = 1; n < S.count(); ++n) {
    fin = iterated_riemann_prefix(X, S.level(n));
    out.report.uniform_cauchy.push_back(sup_diff(prev, fin));
    prev.swap(fin);
  }
  double last = out.report.uniform_cauchy.back();
  out.report.converged = last <= tol;
  if (!out.report.converged)
    throw ConvergenceError("canonical lift did not converge across the two finest levels", last);
  // prev now holds the finest-level integral prefix.
  const Index n = X.size();
  std::vector<Mat> second;
  second.reserve(static_cast<std::size_t>(n) - 1);
  for (Index i = 0; i + 1 < n; ++i) {
    Mat inc = prev[static_cast<std::size_t>(i) + 1] - prev[static_cast<std::size_t>(i)];
    inc.noalias() -= X.value(i) * (X.value(i + 1) - X.value(i)).transpose();
    second.push_back(std::move(inc));
  }
  out.rough = RoughPath(X, std::move(second), p);
  return out;
}

RoughPath lift_piecewise_constant(const CadlagPath& Xn, const Partition& P, double p) {
  std::vector<Index> pidx = subset_indices(P, Xn.grid());
  std::vector<bool> is_pt(static_cast<std::size_t>(Xn.size()), false);
  for (Index i : pidx) is_pt[static_cast<std::size_t>(i)] = true;
  // The path may only move at partition points.
  for (Index i = 0; i + 1 < Xn.size(); ++i)
    if (!is_pt[static_cast<std::size_t>(i) + 1])
      require((Xn.value(i + 1) - Xn.value(i)).norm() <= 1e-12,
              "path is not piecewise constant along the partition");
  const Index d = Xn.dim();
  std::vector<Mat> second(static_cast<std::size_t>(Xn.size()) - 1, Mat::Zero(d, d));
  return RoughPath(Xn, std::move(second), p);
}

double rough_distance(const RoughPath& R1, const RoughPath& R2, double p) {
  require(R1.dim() == R2.dim() && R1.size() == R2.size(), "rough paths on different grids");
  const CadlagPath& X1 = R1.base();
  const CadlagPath& X2 = R2.base();
  CadlagPath diff = path_sum(X1, X2, -1.0);
  double base_var = p_variation(diff, p);
  auto xi_norm = [&](Index i, Index j) { return (R1.chen(i, j) - R2.chen(i, j)).norm(); };
  double second_var = two_param_variation(xi_norm, R1.size(), p / 2.0);
  return base_var + second_var;
}

RoughPath restrict_rough(const RoughPath& R, const Partition& P) {
  std::vector<Index> idx = subset_indices(P, R.base().grid());
  CadlagPath base = restrict_to(R.base(), P);
  std::vector<Mat> second;
  second.reserve(static_cast<std::size_t>(P.size()) - 1);
  for (std::size_t k = 0; k + 1 < idx.size(); ++k) second.push_back(R.chen(idx[k], idx[k + 1]));
  return RoughPath(std::move(base), std::move(second), R.exponent());
}

RieReport rie_diagnostic(const CadlagPath& X, const PartitionSequence& S, double p,
                         const ControlFunction& w, const RieOptions& opts) {
  RieReport rep;
  double sn = X.sup_norm();
  rep.path_tol = opts.path_tol >= 0.0 ? opts.path_tol : 0.05 * (1.0 + sn);
  rep.integral_tol = opts.integral_tol >= 0.0 ? opts.integral_tol : 1e-4 * (1.0 + sn * sn);

  std::vector<std::vector<Mat>> prefixes;
  prefixes.reserve(S.count());
  for (std::size_t n = 0; n < S.count(); ++n) {
    CadlagPath Xn = discretize_piecewise_constant(X, S.level(n));
    rep.uniform_path_error.push_back(sup_distance(Xn, X));
    prefixes.push_back(iterated_riemann_prefix(X, S.level(n)));
  }
  for (std::size_t n = 0; n + 1 < S.count(); ++n)
    rep.uniform_integral_error.push_back(sup_diff(prefixes[n], prefixes[n + 1]));

  // First supremum of the control inequality over pairs of the finest level.
  {
    const Partition& F = S.finest();
    std::vector<Index> fidx = subset_indices(F, X.grid());
    for (std::size_t a = 0; a < fidx.size(); ++a) {
      for (std::size_t b = a + 1; b < fidx.size(); ++b) {
        double denom = w(F[static_cast<Index>(a)], F[static_cast<Index>(b)]);
        double num = std::pow((X.value(fidx[b]) - X.value(fidx[a])).norm(), p);
        if (num == 0.0) continue;
        rep.sup_increment_ratio = std::max(rep.sup_increment_ratio, num / denom);
      }
    }
  }
  // Second supremum: remainders of the level Riemann sums against w.
  for (std::size_t n = 0; n < S.count(); ++n) {
    const Partition& Pn = S.level(n);
    std::vector<Index> pidx = subset_indices(Pn, X.grid());
    const std::vector<Mat>& I = prefixes[n];
    for (std::size_t k = 0; k + 1 < pidx.size(); ++k) {
      for (std::size_t l = k + 1; l < pidx.size(); ++l) {
        Mat R = I[static_cast<std::size_t>(pidx[l])] - I[static_cast<std::size_t>(pidx[k])];
        R.noalias() -= X.value(pidx[k]) * (X.value(pidx[l]) - X.value(pidx[k])).transpose();
        double num = std::pow(R.norm(), p / 2.0);
        if (num == 0.0) continue;
        double denom = w(Pn[static_cast<Index>(k)], Pn[static_cast<Index>(l)]);
        rep.sup_remainder_ratio = std::max(rep.sup_remainder_ratio, num / denom);
      }
    }
  }
  rep.best_scale = std::max(rep.sup_increment_ratio, rep.sup_remainder_ratio);
  bool path_ok = rep.uniform_path_error.back() <= rep.path_tol &&
                 rep.uniform_path_error.back() <= rep.uniform_path_error.front() + 1e-15;
  bool integral_ok = rep.uniform_integral_error.empty() ||
                     (rep.uniform_integral_error.back() <= rep.integral_tol &&
                      rep.uniform_integral_error.back() <= rep.uniform_integral_error.front() + 1e-15);
  rep.pass = rep.sup_increment_ratio <= 1.0 + 1e-9 && rep.sup_remainder_ratio <= 1.0 + 1e-9 &&
             path_ok && integral_ok;
  return rep;
}

double davie_estimate(const RoughPath& R, double alpha, double beta) {
  require(beta > 1.0 - alpha && beta < 2.0 * alpha, "beta must lie in (1-alpha, 2 alpha)");
  const Partition& G = R.base().grid();
  const Index n = G.size();
  const double delta = G[1] - G[0];
  for (Index i = 1; i + 1 < n; ++i)
    require(std::abs((G[i + 1] - G[i]) - delta) <= 1e-9 * delta,
            "davie estimate requires an equidistant grid");
  double best = 0.0;
  for (Index m = 1; (n - 1) / m >= 2; m *= 2) {
    if ((n - 1) % m != 0) break;
    const Index steps = (n - 1) / m;
    const double h = m * delta;
    const Index d = R.dim();
    std::vector<Mat> prefix(static_cast<std::size_t>(steps) + 1, Mat::Zero(d, d));
    for (Index j = 0; j < steps; ++j)
      prefix[static_cast<std::size_t>(j) + 1] =
          prefix[static_cast<std::size_t>(j)] + R.chen(j * m, (j + 1) * m);
    const double h2a = std::pow(h, 2.0 * alpha);
    for (Index k = 0; k < steps; ++k) {
      for (Index l = k + 1; l <= steps; ++l) {
        double num = (prefix[static_cast<std::size_t>(l)] - prefix[static_cast<std::size_t>(k)]).norm();
        double den = std::pow(static_cast<double>(l - k), beta) * h2a;
        best = std::max(best, num / den);
      }
    }
  }
  return best;
}

JointLift joint_lift_eta_w(const CadlagPath& eta, const CadlagPath& W,
                           const PartitionSequence& S, double p) {
  require(eta.size() == W.size(), "eta and W must share the grid");
  for (Index i = 0; i < eta.size(); ++i)
    require(std::abs(eta.time(i) - W.time(i)) <= kTimeTol, "eta and W must share the grid");
  require(eta.marked_jumps().empty(), "eta must be continuous");
  const Index d = eta.dim(), e = W.dim();
  const Index n = eta.size();

  Mat vals(d + e, n);
  vals.topRows(d) = eta.values();
  vals.bottomRows(e) = W.values();
  std::map<Index, Vec> lefts;
  for (const auto& [idx, v] : W.marked_jumps()) {
    Vec l(d + e);
    l.head(d) = eta.value(idx);
    l.tail(e) = v;
    lefts.emplace(idx, std::move(l));
  }
  CadlagPath base(eta.grid(), std::move(vals), std::move(lefts));

  // Consecutive-pair second level: only the bottom-left block is nonzero;
  // Chen reconstruction then yields all four blocks as exact left-point
  // sums, the top-right being the Ito sum of eta against dW.
  std::vector<Mat> second(static_cast<std::size_t>(n) - 1, Mat::Zero(d + e, d + e));
  for (Index i = 0; i + 1 < n; ++i) {
    Vec dEta = eta.value(i + 1) - eta.value(i);
    Vec dW = W.value(i + 1) - W.value(i);
    second[static_cast<std::size_t>(i)].block(d, 0, e, d) = dW * dEta.transpose();
  }

  JointLift out;
  out.lambda = RoughPath(std::move(base), std::move(second), p);

  const double T = eta.grid().horizon();
  for (std::size_t li = 0; li < S.count(); ++li) {
    const Partition& Pn = S.level(li);
    std::vector<Index> idx = subset_indices(Pn, eta.grid());
    Mat qc = Mat::Zero(d, e);
    for (std::size_t k = 0; k + 1 < idx.size(); ++k)
      qc.noalias() += (eta.value(idx[k + 1]) - eta.value(idx[k])) *
                      (W.value(idx[k + 1]) - W.value(idx[k])).transpose();
    out.quad_covar.push_back(qc);
    out.quad_covar_norm.push_back(qc.norm());
    out.levels.push_back(static_cast<int>(std::lround(std::log2(T / Pn.mesh()))));
  }
  // Least-squares slope of -log2 |<eta,W>^n_T| against the level index.
  {
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < out.quad_covar_norm.size(); ++i) {
      if (out.quad_covar_norm[i] > 0.0) {
        xs.push_back(static_cast<double>(out.levels[i]));
        ys.push_back(-std::log2(out.quad_covar_norm[i]));
      }
    }
    if (xs.size() >= 2) {
      double mx = 0, my = 0;
      for (std::size_t i = 0; i < xs.size(); ++i) { mx += xs[i]; my += ys[i]; }
      mx /= xs.size(); my /= ys.size();
      double sxx = 0, sxy = 0;
      for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
      }
      out.fitted_decay_slope = sxy / sxx;
    }
  }
  return out;
}

void write_roughpath_json(std::ostream& os, const RoughPath& R) {
  nlohmann::json j;
  j["p"] = R.exponent();
  j["grid"] = R.base().grid().times();
  const Index d = R.dim();
  std::vector<std::vector<double>> vals;
  for (Index i = 0; i < R.size(); ++i) {
    std::vector<double> v(static_cast<std::size_t>(d));
    for (Index c = 0; c < d; ++c) v[static_cast<std::size_t>(c)] = R.base().value(i)(c);
    vals.push_back(std::move(v));
  }
  j["values"] = vals;
  nlohmann::json lefts = nlohmann::json::object();
  for (const auto& [idx, v] : R.base().marked_jumps()) {
    std::vector<double> l(static_cast<std::size_t>(d));
    for (Index c = 0; c < d; ++c) l[static_cast<std::size_t>(c)] = v(c);
    lefts[std::to_string(idx)] = l;
  }
  j["left_values"] = lefts;
  std::vector<std::vector<double>> second;
  for (const Mat& m : R.second_level()) {
    std::vector<double> row;  // row-major d x d
    for (Index r = 0; r < d; ++r)
      for (Index c = 0; c < d; ++c) row.push_back(m(r, c));
    second.push_back(std::move(row));
  }
  j["second_level"] = second;
  os << j.dump(2) << "\n";
}

RoughPath read_roughpath_json(std::istream& is) {
  nlohmann::json j;
  is >> j;
  std::vector<double> grid = j.at("grid").get<std::vector<double>>();
  auto vals = j.at("values").get<std::vector<std::vector<double>>>();
  require(!vals.empty(), "rough path JSON has no values");
  const Index d = static_cast<Index>(vals[0].size());
  Mat m(d, static_cast<Index>(vals.size()));
  for (std::size_t i = 0; i < vals.size(); ++i)
    for (Index c = 0; c < d; ++c) m(c, static_cast<Index>(i)) = vals[i][static_cast<std::size_t>(c)];
  std::map<Index, Vec> lefts;
  for (const auto& [key, lv] : j.at("left_values").items()) {
    auto lvec = lv.get<std::vector<double>>();
    Vec l(d);
    for (Index c = 0; c < d; ++c) l(c) = lvec[static_cast<std::size_t>(c)];
    lefts.emplace(static_cast<Index>(std::stoll(key)), std::move(l));
  }
  CadlagPath base(Partition(std::move(grid)), std::move(m), std::move(lefts));
  std::vector<Mat> second;
  for (const auto& row : j.at("second_level")) {
    auto rv = row.get<std::vector<double>>();
    require(static_cast<Index>(rv.size()) == d * d, "second-level block size mismatch");
    Mat blk(d, d);
    for (Index r = 0; r < d; ++r)
      for (Index c = 0; c < d; ++c) blk(r, c) = rv[static_cast<std::size_t>(r * d + c)];
    second.push_back(std::move(blk));
  }
  return RoughPath(std::move(base), std::move(second), j.at("p").get<double>());
}

std::string rie_report_json(const RieReport& rep) {
  nlohmann::json j;
  j["uniform_path_error"] = rep.uniform_path_error;
  j["uniform_integral_error"] = rep.uniform_integral_error;
  j["sup_increment_ratio"] = rep.sup_increment_ratio;
  j["sup_remainder_ratio"] = rep.sup_remainder_ratio;
  j["best_scale"] = rep.best_scale;
  j["path_tol"] = rep.path_tol;
  j["integral_tol"] = rep.integral_tol;
  j["pass"] = rep.pass;
  return j.dump(2);
}

}  // namespace roughlab

#include "roughlab/schemes.hpp"

#include <cmath>

namespace roughlab {

namespace {

CadlagPath pack_scheme_output(const Partition& P, Mat vals) {
  std::map<Index, Vec> lefts;
  for (Index i = 1; i < P.size(); ++i)
    if ((vals.col(i) - vals.col(i - 1)).norm() > 0.0) lefts.emplace(i, vals.col(i - 1));
  return CadlagPath(P, std::move(vals), std::move(lefts));
}

void check_finite(const Vec& y, Index step) {
  if (!y.allFinite())
    throw std::runtime_error("scheme state became non-finite at step " + std::to_string(step));
}

}  // namespace

CadlagPath euler_scheme(const Coefficients& coeffs, const Vec& y0, const CadlagPath& X,
                        const Partition& P) {
  std::vector<Index> pidx = subset_indices(P, X.grid());
  require(y0.size() == coeffs.state_dim, "initial value dimension mismatch");
  require(X.dim() == coeffs.driver_dim, "driver dimension mismatch");
  Mat vals(coeffs.state_dim, P.size());
  Vec y = y0;
  vals.col(0) = y;
  for (Index i = 0; i + 1 < P.size(); ++i) {
    const double ti = P[i];
    const double dt = P[i + 1] - P[i];
    Vec dx = X.value(pidx[static_cast<std::size_t>(i) + 1]) - X.value(pidx[static_cast<std::size_t>(i)]);
    y += coeffs.drift(ti, y) * dt + coeffs.sigma(ti, y) * dx;
    check_finite(y, i + 1);
    vals.col(i + 1) = y;
  }
  return pack_scheme_output(P, std::move(vals));
}

ApproximateEulerResult approximate_euler(const Coefficients& coeffs, const Vec& y0,
                                         const CadlagPath& X, const CadlagPath& phi,
                                         const Partition& P) {
  require(phi.size() == X.size() && phi.dim() == X.dim(), "phi must live on the driver grid");
  ApproximateEulerResult out;
  out.x_hat = path_sum(X, phi);
  out.y = euler_scheme(coeffs, y0, out.x_hat, P);
  return out;
}

CadlagPath milstein_reference(const Coefficients& coeffs, const Vec& y0, const RoughPath& R,
                              const Partition& P) {
  const CadlagPath& X = R.base();
  std::vector<Index> pidx = subset_indices(P, X.grid());
  Mat vals(coeffs.state_dim, P.size());
  Vec y = y0;
  vals.col(0) = y;
  for (Index i = 0; i + 1 < P.size(); ++i) {
    const double ti = P[i];
    const double dt = P[i + 1] - P[i];
    const Index gi = pidx[static_cast<std::size_t>(i)];
    const Index gj = pidx[static_cast<std::size_t>(i) + 1];
    Vec dx = X.value(gj) - X.value(gi);
    Mat Xi = R.chen(gi, gj);
    Mat sig = coeffs.sigma(ti, y);
    Vec milstein = second_order_contraction(coeffs.sigma_dy_at(ti, y), sig, Xi);
    y += coeffs.drift(ti, y) * dt + sig * dx + milstein;
    check_finite(y, i + 1);
    vals.col(i + 1) = y;
  }
  return pack_scheme_output(P, std::move(vals));
}

ReferenceSolution solve_rde_reference(const Coefficients& coeffs, const Vec& y0,
                                      const CadlagPath& X, const PartitionSequence& S,
                                      double p) {
  require(S.count() >= 3, "reference needs at least three levels (cross-check two below)");
  const Partition& fine = S.finest();
  const Partition& mid = S.level(S.count() - 2);
  const Partition& coarse = S.level(S.count() - 3);

  ReferenceSolution out;
  out.y = euler_scheme(coeffs, y0, X, fine);
  CadlagPath y_mid = euler_scheme(coeffs, y0, X, mid);

  double tol = 0.0;
  for (Index i = 0; i < mid.size(); ++i)
    tol = std::max(tol, (out.y.value_at_time(mid[i]) - y_mid.value(i)).norm());
  out.tolerance = std::max(tol, 1e-12 * (1.0 + y0.norm()));

  // The cross-check only needs the finest-level lift values; certification
  // of uniform convergence is the rie diagnostic's job, so no tolerance here.
  CanonicalLift lift = canonical_lift(X, S, p, std::numeric_limits<double>::infinity());
  CadlagPath y_mil = milstein_reference(coeffs, y0, lift.rough, coarse);
  double gap = 0.0;
  for (Index i = 0; i < coarse.size(); ++i)
    gap = std::max(gap, (out.y.value_at_time(coarse[i]) - y_mil.value(i)).norm());
  out.milstein_gap = gap;
  if (gap > 10.0 * out.tolerance)
    throw ConvergenceError("reference Euler disagrees with the second-order cross-check", gap);
  return out;
}

PicardResult solve_rde_picard(const Coefficients& coeffs, const Vec& y0, const CadlagPath& A,
                              const CadlagPath& H, const RoughPath& R, int max_iter, double tol) {
  const CadlagPath& X = R.base();
  const Index n = X.size();
  require(A.size() == n && H.size() == n, "A and H must live on the driver grid");
  require(A.dim() == 1 && H.dim() == 1, "A and H are scalar paths in this artifact");
  const Index k = coeffs.state_dim;

  Mat Y(k, n);
  std::vector<Mat> Yp(static_cast<std::size_t>(n));
  Y.col(0) = y0;
  PicardResult res;

  Index a = 0;
  Index len = n - 1;  // current subinterval length in steps
  while (a + 1 < n) {
    Index b = std::min<Index>(a + len, n - 1);
    // Initialize the working interval with the constant continuation.
    for (Index i = a; i <= b; ++i) {
      Y.col(i) = Y.col(a);
      Yp[static_cast<std::size_t>(i)] = coeffs.sigma(H.value(i)(0), Y.col(a));
    }
    double prev_dist = std::numeric_limits<double>::infinity();
    bool converged = false;
    for (int it = 0; it < max_iter; ++it) {
      double dist = 0.0;
      Vec acc = Y.col(a);
      for (Index i = a; i < b; ++i) {
        const double h = H.value(i)(0);
        const Vec yi = Y.col(i);
        double dA = A.value(i + 1)(0) - A.value(i)(0);
        Vec dx = X.value(i + 1) - X.value(i);
        const Mat& Xi = R.second_level()[static_cast<std::size_t>(i)];
        Vec comp = second_order_contraction(coeffs.sigma_dy_at(h, yi),
                                            Yp[static_cast<std::size_t>(i)], Xi);
        acc += coeffs.drift(h, yi) * dA + coeffs.sigma(h, yi) * dx + comp;
        double step_change = (acc - Y.col(i + 1)).norm();
        dist = std::max(dist, step_change);
        Y.col(i + 1) = acc;
        check_finite(acc, i + 1);
      }
      for (Index i = a; i <= b; ++i) Yp[static_cast<std::size_t>(i)] = coeffs.sigma(H.value(i)(0), Y.col(i));
      ++res.sweeps;
      if (dist <= tol) { converged = true; break; }
      if (dist > 0.9 * prev_dist && it >= 2) break;  // stalled contraction
      prev_dist = dist;
    }
    if (!converged) {
      if (len <= 4)
        throw ConvergenceError("Picard iteration failed to contract on the smallest subinterval",
                               prev_dist);
      len = std::max<Index>(4, len / 2);
      ++res.splits;
      continue;  // retry the shrunk interval from the same anchor
    }
    a = b;
    len = std::min<Index>(len * 2, n - 1);  // relax the window after success
  }

  CadlagPath ypath = [&] {
    std::map<Index, Vec> lefts;
    for (const auto& [idx, v] : X.marked_jumps()) {
      (void)v;
      if (idx >= 1) lefts.emplace(idx, Y.col(idx - 1));
    }
    return CadlagPath(X.grid(), Y, std::move(lefts));
  }();
  ControlledPath C;
  C.y = std::move(ypath);
  C.y_prime = std::move(Yp);
  C.remainder.reserve(static_cast<std::size_t>(n) - 1);
  for (Index i = 0; i + 1 < n; ++i)
    C.remainder.push_back(Vec(Y.col(i + 1) - Y.col(i) -
                              C.y_prime[static_cast<std::size_t>(i)] * (X.value(i + 1) - X.value(i))));
  res.solution = std::move(C);
  return res;
}

}  // namespace roughlab

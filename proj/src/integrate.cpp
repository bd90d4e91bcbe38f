#include "roughlab/integrate.hpp"

#include <cmath>

#include "roughlab/variation.hpp"

namespace roughlab {

YoungResult young_integral(const CadlagPath& F, const CadlagPath& A, double t, double tol) {
  require(F.size() == A.size(), "integrand and integrator must share the grid");
  Index it = F.grid().find(t);
  require(it >= 0, "t must be a grid time");
  const Index kF = F.dim(), dA = A.dim();
  Mat full = Mat::Zero(kF, dA);
  for (Index j = 0; j + 1 <= it; ++j)
    full.noalias() += F.value(j) * (A.value(j + 1) - A.value(j)).transpose();
  // Half-grid sum over every other point (left-point convention preserved).
  Mat half = Mat::Zero(kF, dA);
  for (Index j = 0; j < it; j += 2) {
    Index nxt = std::min<Index>(j + 2, it);
    half.noalias() += F.value(j) * (A.value(nxt) - A.value(j)).transpose();
  }
  YoungResult res;
  res.value = full;
  res.refinement_error = (full - half).norm();
  require(res.refinement_error <= tol, "Young integral refinement inconsistency above tolerance");
  return res;
}

ControlledPath controlled_from_solution(const CadlagPath& Y, const Coefficients& coeffs,
                                        const CadlagPath& H, const CadlagPath& X) {
  require(Y.size() == X.size() && H.size() == X.size(), "grid mismatch");
  ControlledPath C;
  C.y = Y;
  const Index n = Y.size();
  C.y_prime.reserve(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) C.y_prime.push_back(coeffs.sigma(H.value(i)(0), Y.value(i)));
  C.remainder.reserve(static_cast<std::size_t>(n) - 1);
  for (Index i = 0; i + 1 < n; ++i) {
    Vec r = (Y.value(i + 1) - Y.value(i)) - C.y_prime[static_cast<std::size_t>(i)] * (X.value(i + 1) - X.value(i));
    C.remainder.push_back(std::move(r));
  }
  return C;
}

double remainder_variation(const ControlledPath& C, const CadlagPath& X, double r) {
  // Remainder on an arbitrary pair from the defining identity.
  auto rem_norm = [&](Index i, Index j) {
    Vec rij = (C.y.value(j) - C.y.value(i)) -
              C.y_prime[static_cast<std::size_t>(i)] * (X.value(j) - X.value(i));
    return rij.norm();
  };
  return two_param_variation(rem_norm, C.y.size(), r);
}

RoughIntegralResult rough_integral(const ControlledIntegrand& F, const RoughPath& R, double t) {
  const CadlagPath& X = R.base();
  const Index n = X.size();
  require(static_cast<Index>(F.value.size()) == n, "integrand not on the driver grid");
  Index it = X.grid().find(t);
  require(it >= 0, "t must be a grid time");
  const Index k = F.value[0].rows();
  Mat cum(k, n);
  Vec acc = Vec::Zero(k);
  cum.col(0) = acc;
  for (Index j = 0; j + 1 < n; ++j) {
    const Mat& Xi = R.second_level()[static_cast<std::size_t>(j)];
    acc += F.value[static_cast<std::size_t>(j)] * (X.value(j + 1) - X.value(j));
    const auto& G = F.gub[static_cast<std::size_t>(j)];
    for (Index r = 0; r < k; ++r) acc(r) += G[static_cast<std::size_t>(r)].cwiseProduct(Xi).sum();
    cum.col(j + 1) = acc;
  }
  RoughIntegralResult res;
  res.value = cum.col(it);
  res.path = CadlagPath(X.grid(), std::move(cum));
  return res;
}

Mat rough_integral_outer(const RoughPath& R, double t) {
  const CadlagPath& X = R.base();
  Index it = X.grid().find(t);
  require(it >= 0, "t must be a grid time");
  const Index d = X.dim();
  Mat acc = Mat::Zero(d, d);
  for (Index j = 0; j < it; ++j) {
    acc.noalias() += X.value(j) * (X.value(j + 1) - X.value(j)).transpose();
    acc += R.second_level()[static_cast<std::size_t>(j)];
  }
  return acc;
}

ControlledIntegrand sigma_integrand(const Coefficients& coeffs, const CadlagPath& H,
                                    const ControlledPath& C) {
  const Index n = C.y.size();
  ControlledIntegrand F;
  F.value.reserve(static_cast<std::size_t>(n));
  F.gub.reserve(static_cast<std::size_t>(n));
  const Index k = coeffs.state_dim, d = coeffs.driver_dim;
  for (Index i = 0; i < n; ++i) {
    double h = H.value(i)(0);
    const Vec y = C.y.value(i);
    F.value.push_back(coeffs.sigma(h, y));
    std::vector<Mat> dsig = coeffs.sigma_dy_at(h, y);
    const Mat& yp = C.y_prime[static_cast<std::size_t>(i)];
    // G[r](a,b) = sum_m dsig[m](r,b) * Y'(m,a)
    std::vector<Mat> G(static_cast<std::size_t>(k), Mat::Zero(d, d));
    for (Index r = 0; r < k; ++r)
      for (Index a = 0; a < d; ++a)
        for (Index b = 0; b < d; ++b) {
          double s = 0.0;
          for (Index m = 0; m < k; ++m) s += dsig[static_cast<std::size_t>(m)](r, b) * yp(m, a);
          G[static_cast<std::size_t>(r)](a, b) = s;
        }
    F.gub.push_back(std::move(G));
  }
  return F;
}

}  // namespace roughlab

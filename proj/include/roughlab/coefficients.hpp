#pragma once

#include <functional>
#include <string>

#include "roughlab/common.hpp"

namespace roughlab {

// Coefficient fields b(t, y) in R^k and sigma(t, y) in R^{k x d} of the
// differential equation. Analytic state derivatives are optional; a central
// finite difference with step fd_step is the fallback.
struct Coefficients {
  Index state_dim = 1;   // k
  Index driver_dim = 1;  // d

  std::function<Vec(double, const Vec&)> drift;   // k
  std::function<Mat(double, const Vec&)> sigma;   // k x d
  // Optional analytic derivatives: entry m is d(sigma)/dy_m (k x d), and
  // drift_dy column m is d(b)/dy_m.
  std::function<std::vector<Mat>(double, const Vec&)> sigma_dy;
  std::function<Mat(double, const Vec&)> drift_dy;

  double fd_step = 1e-6;

  std::vector<Mat> sigma_dy_at(double t, const Vec& y) const;
  Mat drift_dy_at(double t, const Vec& y) const;
};

// Contraction sum_m sum_{a,b} dsig[m](r,b) * V(m,a) * Xi(a,b) used for the
// Gubinelli compensator (V = Y') and the second-order scheme term (V = sigma).
Vec second_order_contraction(const std::vector<Mat>& dsig, const Mat& V, const Mat& Xi);

struct DerivativeCheckReport {
  double max_rel_err = 0.0;
  bool pass = false;
};

// Compares analytic derivatives against central finite differences on the
// probe points; 1e-4 relative tolerance.
DerivativeCheckReport check_derivatives(const Coefficients& c, const std::vector<Vec>& probes,
                                        double t = 0.0);

// Named built-in families:
//   linear:  b = B y + b0, sigma col j = S_j y + s_j
//   rotation: k = 2, d = 1, b = 0, sigma(t, y) = omega * J y
//   tanh:    bounded-smooth saturated affine fields,
//            b_r = b_amp * tanh(y_r + b_shift), sigma col j row r =
//            amp * tanh(u . y + c_{rj}) + off
// Parameters are read from the flat key/value list; unknown keys throw.
Coefficients make_coefficients(const std::string& kind, Index state_dim, Index driver_dim,
                               const std::vector<std::pair<std::string, double>>& params = {});

}  // namespace roughlab

#pragma once

#include <limits>

#include "roughlab/coefficients.hpp"
#include "roughlab/common.hpp"
#include "roughlab/lift.hpp"
#include "roughlab/path.hpp"

namespace roughlab {

struct YoungResult {
  Mat value;                      // kF x dA, entry (i,j) = int F_i dA_j
  double refinement_error = 0.0;  // |full-grid sum - half-grid sum|
};

// Left-point Riemann sum of F against A on their common grid up to grid
// time t, with a refinement-consistency estimate against the half grid.
// Throws when the estimate exceeds tol.
YoungResult young_integral(const CadlagPath& F, const CadlagPath& A, double t,
                           double tol = std::numeric_limits<double>::infinity());

// Controlled path (Y, Y', R^Y) on the grid of the driving path: Y' is the
// Gubinelli derivative per grid point and the remainder lives on
// consecutive pairs, R^Y_{i,i+1} = Y_{i,i+1} - Y'_i X_{i,i+1}.
struct ControlledPath {
  CadlagPath y;                // k-dim
  std::vector<Mat> y_prime;    // per grid point, k x d
  std::vector<Vec> remainder;  // per consecutive pair, k
  double q = 0.0;              // exponent metadata
  double r = 0.0;
};

ControlledPath controlled_from_solution(const CadlagPath& Y, const Coefficients& coeffs,
                                        const CadlagPath& H, const CadlagPath& X);

// r-variation of the remainder (two-parameter DP over the grid).
double remainder_variation(const ControlledPath& C, const CadlagPath& X, double r);

// Matrix-valued controlled integrand (F, F'): value k x d per grid point,
// Gubinelli derivative as k row blocks of d x d per grid point.
struct ControlledIntegrand {
  std::vector<Mat> value;
  std::vector<std::vector<Mat>> gub;
};

struct RoughIntegralResult {
  Vec value;        // at the requested time
  CadlagPath path;  // cumulative integral on the grid
};

// Compensated left-point sums sum_j (F_j X_{j,j+1} + F'_j : Xi_{j,j+1}).
RoughIntegralResult rough_integral(const ControlledIntegrand& F, const RoughPath& R, double t);

// The outer-product integrand (X, Id): sum_j (X_j (x) X_{j,j+1} + Xi_{j,j+1});
// reproduces int X (x) dX of the lift.
Mat rough_integral_outer(const RoughPath& R, double t);

// Integrand sigma(H, Y) with Gubinelli derivative from Dsigma . Y'.
ControlledIntegrand sigma_integrand(const Coefficients& coeffs, const CadlagPath& H,
                                    const ControlledPath& C);

}  // namespace roughlab

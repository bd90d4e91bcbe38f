#pragma once

#include "roughlab/coefficients.hpp"
#include "roughlab/common.hpp"
#include "roughlab/integrate.hpp"
#include "roughlab/lift.hpp"
#include "roughlab/partition.hpp"
#include "roughlab/path.hpp"

namespace roughlab {

// First-order Euler scheme along P (P must be a subset of the driver grid):
//   Y_{i+1} = Y_i + b(t_i, Y_i) dt + sigma(t_i, Y_i) dX.
// Uses only path increments, never the lift. The output lives on P with
// jumps marked at every partition point where the value moves.
CadlagPath euler_scheme(const Coefficients& coeffs, const Vec& y0, const CadlagPath& X,
                        const Partition& P);

struct ApproximateEulerResult {
  CadlagPath y;
  CadlagPath x_hat;  // X + phi, for downstream lifting
};

// Euler recursion driven by the perturbed signal X + phi.
ApproximateEulerResult approximate_euler(const Coefficients& coeffs, const Vec& y0,
                                         const CadlagPath& X, const CadlagPath& phi,
                                         const Partition& P);

// Second-order reference: adds (Dsigma . sigma) : Xi_{t_i, t_{i+1}} to each
// Euler step. Oracle only.
CadlagPath milstein_reference(const Coefficients& coeffs, const Vec& y0, const RoughPath& R,
                              const Partition& P);

struct ReferenceSolution {
  CadlagPath y;            // Euler output on the finest level
  double tolerance = 0.0;  // sup distance between the two finest Euler levels
  double milstein_gap = 0.0;
};

// Reference solution: Euler on the finest level of S, with the sup distance
// to the next-coarser Euler as the declared tolerance, cross-checked against
// the second-order scheme two levels down (failure above 10x tolerance
// throws).
ReferenceSolution solve_rde_reference(const Coefficients& coeffs, const Vec& y0,
                                      const CadlagPath& X, const PartitionSequence& S,
                                      double p);

struct PicardResult {
  ControlledPath solution;
  int sweeps = 0;
  int splits = 0;
};

// Fixed-point iteration of (Y, Y') -> (y0 + int b(H,Y) dA + int sigma(H,Y)
// dX, sigma(H,Y)) on the grid, halving the working interval whenever the
// sweep distance fails to contract by 0.9 (floor: 4 grid steps).
PicardResult solve_rde_picard(const Coefficients& coeffs, const Vec& y0, const CadlagPath& A,
                              const CadlagPath& H, const RoughPath& R, int max_iter = 200,
                              double tol = 1e-12);

}  // namespace roughlab

#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>
#include <vector>

namespace roughlab {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using Index = Eigen::Index;

// Tolerance used when matching or deduplicating grid times.
inline constexpr double kTimeTol = 1e-12;

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

// Thrown when an iterative construction stalls; carries the stalled value
// so callers can report how far from the tolerance the run ended.
struct ConvergenceError : std::runtime_error {
  double stalled_value;
  ConvergenceError(const std::string& msg, double stalled)
      : std::runtime_error(msg + " (stalled at " + std::to_string(stalled) + ")"),
        stalled_value(stalled) {}
};

}  // namespace roughlab

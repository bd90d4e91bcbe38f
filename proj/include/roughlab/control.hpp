#pragma once

#include <memory>
#include <variant>
#include <vector>

#include "roughlab/common.hpp"
#include "roughlab/path.hpp"
#include "roughlab/variation.hpp"

namespace roughlab {

// w(s,t) = scale * (t - s).
struct LinearControl {
  double scale = 1.0;
};

// w(s,t) = ||phi||^q_{q,[s,t]}; s and t must be grid times of phi. Pair
// values come from a precomputed all-pairs table.
struct QVariationControl {
  QVariationControl(CadlagPath phi, double q);
  std::shared_ptr<const CadlagPath> path;
  double q;
  std::shared_ptr<const VariationTable> table;
};

using AtomControl = std::variant<LinearControl, QVariationControl>;

// weight * prod_i component[index_i]^power_i
struct ControlTerm {
  double weight = 1.0;
  std::vector<std::pair<std::size_t, double>> powers;
};

// Sum of products of powers of atom controls, as in the composite control
// of the perturbed-driver stability argument.
struct CombinationControl {
  std::vector<AtomControl> components;
  std::vector<ControlTerm> terms;
};

class ControlFunction {
 public:
  ControlFunction(LinearControl c) : fn_(std::move(c)) {}
  ControlFunction(QVariationControl c) : fn_(std::move(c)) {}
  ControlFunction(CombinationControl c) : fn_(std::move(c)) {}

  double operator()(double s, double t) const;

  static ControlFunction linear(double scale) { return ControlFunction(LinearControl{scale}); }
  static ControlFunction q_variation(CadlagPath phi, double q) {
    return ControlFunction(QVariationControl(std::move(phi), q));
  }

 private:
  std::variant<LinearControl, QVariationControl, CombinationControl> fn_;
};

inline double control_eval(const ControlFunction& w, double s, double t) { return w(s, t); }

// Numerical superadditivity over all triples of the supplied grid:
// w(s,u) + w(u,t) <= w(s,t) up to 1e-10 relative slack. Grids larger than
// 128 points are thinned evenly before the scan.
bool control_superadditivity_check(const ControlFunction& w, const Partition& grid);

}  // namespace roughlab

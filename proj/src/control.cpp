#include "roughlab/control.hpp"

#include <cmath>

namespace roughlab {

QVariationControl::QVariationControl(CadlagPath phi, double q_)
    : path(std::make_shared<CadlagPath>(std::move(phi))), q(q_) {
  table = std::make_shared<VariationTable>(*path, q);
}

namespace {

double eval_atom(const AtomControl& a, double s, double t) {
  if (const auto* lin = std::get_if<LinearControl>(&a)) return lin->scale * (t - s);
  const auto& qv = std::get<QVariationControl>(a);
  Index i = qv.path->grid().find(s), j = qv.path->grid().find(t);
  require(i >= 0 && j >= 0, "control evaluation times must be grid times of phi");
  if (i == j) return 0.0;
  return qv.table->value(i, j);
}

}  // namespace

double ControlFunction::operator()(double s, double t) const {
  require(t >= s - kTimeTol, "control requires s <= t");
  if (t <= s) return 0.0;
  if (const auto* lin = std::get_if<LinearControl>(&fn_)) return lin->scale * (t - s);
  if (const auto* qv = std::get_if<QVariationControl>(&fn_)) {
    AtomControl a = *qv;
    return eval_atom(a, s, t);
  }
  const auto& comb = std::get<CombinationControl>(fn_);
  double total = 0.0;
  for (const ControlTerm& term : comb.terms) {
    double prod = term.weight;
    for (const auto& [idx, pow] : term.powers)
      prod *= std::pow(eval_atom(comb.components.at(idx), s, t), pow);
    total += prod;
  }
  return total;
}

bool control_superadditivity_check(const ControlFunction& w, const Partition& grid) {
  std::vector<double> ts;
  const Index n = grid.size();
  if (n <= 128) {
    ts = grid.times();
  } else {
    for (Index i = 0; i < 128; ++i)
      ts.push_back(grid[(i * (n - 1)) / 127]);
  }
  const std::size_t m = ts.size();
  Mat table(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j) table(i, j) = w(ts[i], ts[j]);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t k = i + 1; k < m; ++k) {
      const double whole = table(i, k);
      const double slack = 1e-10 * std::max(1.0, std::abs(whole));
      for (std::size_t j = i + 1; j < k; ++j) {
        if (table(i, j) + table(j, k) > whole + slack) return false;
      }
    }
  }
  return true;
}

}  // namespace roughlab

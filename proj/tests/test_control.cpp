#include <cmath>

#include "doctest.h"
#include "roughlab/control.hpp"
#include "support.hpp"

using namespace roughlab;

TEST_CASE("linear control evaluates and is superadditive") {
  ControlFunction w = ControlFunction::linear(2.0);
  CHECK(w(0.0, 0.5) == doctest::Approx(1.0));
  CHECK(w(0.3, 0.3) == 0.0);
  CHECK_THROWS_AS(w(0.5, 0.2), std::invalid_argument);
  CHECK(control_superadditivity_check(w, Partition::dyadic(5, 1.0)));
}

TEST_CASE("q-variation control of a constant path vanishes") {
  Partition P = Partition::equidistant(10, 1.0);
  CadlagPath flat = constant_path(P, Vec::Constant(1, 3.0));
  ControlFunction w = ControlFunction::q_variation(flat, 1.5);
  CHECK(w(0.0, 1.0) == 0.0);
  CHECK(w(P[2], P[7]) == 0.0);
}

TEST_CASE("q-variation control is superadditive") {
  CadlagPath phi = testing::random_cadlag_path(17, 24, 1, 0.15);
  ControlFunction w = ControlFunction::q_variation(phi, 1.4);
  CHECK(control_superadditivity_check(w, phi.grid()));
}

TEST_CASE("composite control of the perturbation argument is superadditive") {
  // w_X^{1/2} * w_phi^{p/2q} with 1/2 + p/2q > 1, plus the plain parts.
  CadlagPath phi = testing::random_cadlag_path(23, 18, 1, 0.2);
  const double p = 2.4, q = 1.3;
  CombinationControl comb;
  comb.components.push_back(LinearControl{1.0});                    // stands in for w_X
  comb.components.push_back(QVariationControl(phi, q));             // w_phi
  comb.terms.push_back({1.0, {{0, 1.0}}});
  comb.terms.push_back({1.0, {{1, 1.0}}});
  comb.terms.push_back({1.0, {{0, 0.5}, {1, p / (2.0 * q)}}});
  comb.terms.push_back({1.0, {{1, p / q}}});
  REQUIRE(0.5 + p / (2.0 * q) > 1.0);
  ControlFunction w{comb};
  CHECK(control_superadditivity_check(w, phi.grid()));
  // sanity: the combination evaluates to the sum of its terms
  double s = phi.grid()[2], t = phi.grid()[9];
  ControlFunction wx = ControlFunction::linear(1.0);
  ControlFunction wphi = ControlFunction::q_variation(phi, q);
  double expect = wx(s, t) + wphi(s, t) + std::sqrt(wx(s, t)) * std::pow(wphi(s, t), p / (2 * q)) +
                  std::pow(wphi(s, t), p / q);
  CHECK(w(s, t) == doctest::Approx(expect));
}

TEST_CASE("a non-superadditive candidate is rejected") {
  // sqrt(t - s) is subadditive, not superadditive.
  CombinationControl comb;
  comb.components.push_back(LinearControl{1.0});
  comb.terms.push_back({1.0, {{0, 0.5}}});
  ControlFunction w{comb};
  CHECK_FALSE(control_superadditivity_check(w, Partition::dyadic(4, 1.0)));
}

#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "roughlab/lift.hpp"
#include "roughlab/partition.hpp"
#include "support.hpp"

using namespace roughlab;

TEST_CASE("partition file round trip") {
  Partition p = make_partition(PartitionFamily::LevyAugmented, 3, 1.0, {0.37});
  std::stringstream ss;
  write_partition(ss, p);
  Partition q = read_partition(ss);
  REQUIRE(q.size() == p.size());
  for (Index i = 0; i < p.size(); ++i) CHECK(q[i] == p[i]);
}

TEST_CASE("rough path JSON round trip") {
  CadlagPath X = testing::random_cadlag_path(71, 20, 2, 0.2);
  CadlagPath Xn = discretize_piecewise_constant(X, X.grid());
  RoughPath R = lift_piecewise_constant(Xn, X.grid(), 2.4);
  std::stringstream ss;
  write_roughpath_json(ss, R);
  RoughPath S = read_roughpath_json(ss);
  CHECK(S.exponent() == R.exponent());
  REQUIRE(S.size() == R.size());
  CHECK(sup_distance(S.base(), R.base()) <= 1e-15);
  CHECK((S.chen(2, 17) - R.chen(2, 17)).norm() <= 1e-15);
}

TEST_CASE("rie report serializes its fields") {
  RieReport rep;
  rep.uniform_path_error = {0.5, 0.25};
  rep.uniform_integral_error = {0.1};
  rep.sup_increment_ratio = 0.7;
  rep.sup_remainder_ratio = 0.9;
  rep.best_scale = 0.9;
  rep.pass = true;
  auto j = nlohmann::json::parse(rie_report_json(rep));
  CHECK(j.at("pass").get<bool>());
  CHECK(j.at("uniform_path_error").size() == 2);
  CHECK(j.at("best_scale").get<double>() == 0.9);
}

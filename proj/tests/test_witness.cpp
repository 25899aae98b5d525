#include <doctest.h>

#include <stdexcept>
#include <string>
#include <vector>

#include "treeperim/bounds.hpp"
#include "treeperim/witness.hpp"

using namespace treeperim;

TEST_CASE("critical cardinalities per regime") {
  const auto c52 = critical_size(5, 2);
  CHECK(c52.size == 14);
  CHECK(c52.regime == Regime::QAtLeast5);
  CHECK_FALSE(c52.cap_levels.has_value());

  const auto c34 = critical_size(3, 4);
  CHECK(c34.size == 51);
  CHECK(c34.cap_levels.value() == 2);

  const auto c210 = critical_size(2, 10);
  CHECK(c210.size == 636);
  CHECK(c210.cap_levels.value() == 2);

  CHECK_THROWS_AS(critical_size(3, 2), std::invalid_argument);
  CHECK_THROWS_AS(critical_size(2, 4), std::invalid_argument);
  CHECK_THROWS_AS(critical_size(2, 0), std::invalid_argument);
}

TEST_CASE("postorder prefixes") {
  TreeShape s(2, 2);
  const auto p3 = postorder_prefix(s, 3);
  CHECK(p3.members() == std::vector<VertexId>{1, 3, 4});
  CHECK(boundary(p3).members() == std::vector<VertexId>{0});
  CHECK(postorder_prefix(s, 0).cardinality() == 0);
  const auto p1 = postorder_prefix(s, 1);
  CHECK(p1.members() == std::vector<VertexId>{3});
  CHECK(boundary(p1).members() == std::vector<VertexId>{1});
  CHECK(postorder_prefix(s, 7).cardinality() == 7);
  CHECK_THROWS_AS(postorder_prefix(s, 8), std::out_of_range);
}

TEST_CASE("construction terminates immediately on an almost-full subtree") {
  TreeShape s(3, 6);
  const Count t1 = t_of(s, 1);
  const auto c = build_extremal_set(s, t1 - 1);
  REQUIRE(c.schedule.size() == 1);
  CHECK(c.schedule[0].case_id == 2);
  CHECK(c.set.cardinality() == t1 - 1);
  CHECK(c.boundary_count == 1);
  CHECK(c.s1p == std::vector<VertexId>{1});
  CHECK(c.s1 == std::vector<VertexId>{0});
  CHECK(c.observations_ok);
}

TEST_CASE("construction of a single vertex ends at a leaf") {
  for (int q : {3, 4}) {
    TreeShape s(q, 3);
    const auto c = build_extremal_set(s, 1);
    CHECK(c.set.cardinality() == 1);
    CHECK(s.is_leaf(c.set.members()[0]));
    CHECK(c.observations_ok);
    CHECK(c.boundary_count == 1);
  }
}

TEST_CASE("construction of the full set") {
  TreeShape s(3, 2);
  const auto c = build_extremal_set(s, s.size());
  CHECK(c.set.cardinality() == s.size());
  CHECK(c.boundary_count == 0);
  CHECK(c.observations_ok);
}

TEST_CASE("near-full set consumes whole child subtrees") {
  TreeShape s(3, 3);
  const auto c = build_extremal_set(s, s.size() - 1);
  REQUIRE(!c.schedule.empty());
  CHECK(c.schedule[0].case_id == 4);
  CHECK(c.set.cardinality() == s.size() - 1);
  CHECK(c.boundary_count == 1);
  CHECK(c.observations_ok);
}

TEST_CASE("observations hold for every cardinality on small shapes") {
  for (auto [q, d] : {std::pair<int, int>{3, 3}, {4, 2}}) {
    TreeShape shape(q, d);
    for (Count s = 1; s <= shape.size(); ++s) {
      const auto c = build_extremal_set(shape, s);
      INFO("q=" << q << " d=" << d << " s=" << s);
      CHECK(c.observations_ok);
      CHECK(c.boundary_count ==
            static_cast<Count>(c.s1.size() + c.s2.size()));
    }
  }
  CHECK_THROWS_AS(build_extremal_set(TreeShape(2, 3), 2),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_extremal_set(TreeShape(3, 3), 0), std::out_of_range);
}

TEST_CASE("upper bound sweep on small shapes") {
  const auto sweep = upper_bound_sweep(TreeShape(3, 4));
  CHECK(sweep.bound == 4 - 1 + 2);
  CHECK(sweep.observations_ok);
  CHECK(sweep.all_within_bound);
  CHECK(sweep.max_boundary <= 4);  // path bookkeeping never exceeds d
}

TEST_CASE("threshold search returns the earliest passing depth") {
  const int t = upper_bound_threshold(3, 2, 4);
  CHECK(t >= 2);
  CHECK(t <= 5);
}

TEST_CASE("local structure of a shallow subtree") {
  const auto r = local_structure_report(1, 1);
  CHECK(r.phi_s == 1);
  CHECK(r.witness_s.cardinality() == 1);
  CHECK(r.shape.is_leaf(r.witness_s.members()[0]));
  CHECK(boundary(r.witness_s).members() == std::vector<VertexId>{0});
}

TEST_CASE("postorder borders never beat the oracle") {
  for (auto [q, d] : {std::pair<int, int>{2, 4}, {3, 3}}) {
    TreeShape shape(q, d);
    ProfileOracle oracle(shape);
    const auto rate = postorder_equality_rate(shape, oracle);
    CHECK(rate.never_below);
    CHECK(rate.total == shape.size() + 1);
    CHECK(rate.equal_count >= 2);  // the two trivial endpoints at least
  }
}

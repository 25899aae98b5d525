#include <doctest.h>

#include <stdexcept>
#include <string>
#include <vector>

#include "treeperim/vset.hpp"

using namespace treeperim;

namespace {
VertexSet make(const TreeShape& s, std::vector<VertexId> m) {
  return VertexSet::from_members(s, m);
}
}  // namespace

TEST_CASE("border definition on small sets") {
  TreeShape s(2, 2);
  CHECK(boundary(VertexSet(s)).cardinality() == 0);
  VertexSet full = make(s, {0, 1, 2, 3, 4, 5, 6});
  CHECK(boundary(full).cardinality() == 0);
  CHECK(boundary(make(s, {0})).members() == std::vector<VertexId>{1, 2});
  CHECK(boundary(make(s, {2, 5})).members() == std::vector<VertexId>{0, 6});
}

TEST_CASE("level counts") {
  TreeShape s(2, 2);
  VertexSet empty(s);
  CHECK(empty.level_counts() == std::vector<Count>{0, 0, 0});
  VertexSet full = make(s, {0, 1, 2, 3, 4, 5, 6});
  CHECK(full.level_counts() == std::vector<Count>{1, 2, 4});

  // Left-compressed set with one vertex in level 1, two in levels 2 and 3,
  // nine in level 4.
  TreeShape s24(2, 4);
  VertexSet canon = make(
      s24, {1, 3, 4, 7, 8, 15, 16, 17, 18, 19, 20, 21, 22, 23});
  CHECK(canon.level_counts() == std::vector<Count>{0, 1, 2, 2, 9});
}

TEST_CASE("left order predicate") {
  TreeShape s21(2, 1);
  CHECK(is_left_ordered(make(s21, {1})));
  SwappablePair p{};
  CHECK_FALSE(is_left_ordered(make(s21, {2}), &p));
  CHECK(p.u == 1);
  CHECK(p.v == 2);

  TreeShape s22(2, 2);
  CHECK_FALSE(is_left_ordered(make(s22, {5}), &p));
  CHECK(p.u == 1);
  CHECK(p.v == 2);
}

TEST_CASE("border properties on random sets") {
  Rng rng(7);
  for (int q : {2, 3}) {
    for (int d : {2, 3}) {
      TreeShape shape(q, d);
      for (int i = 0; i < 30; ++i) {
        const Count s =
            static_cast<Count>(rng.below(static_cast<std::uint64_t>(shape.size()) + 1));
        VertexSet set = VertexSet::random(shape, s, rng);
        Boundary b = boundary(set);
        CHECK(b.cardinality() == boundary_size(set));
        CHECK(b.cardinality() <= (q + 1) * std::max<Count>(set.cardinality(), 0));
        for (VertexId v : b.members()) CHECK_FALSE(set.contains(v));
        Count lc = 0;
        for (Count c : set.level_counts()) lc += c;
        CHECK(lc == set.cardinality());
      }
    }
  }
}

TEST_CASE("json round trip") {
  TreeShape s(3, 2);
  VertexSet set = make(s, {0, 4, 7});
  const std::string text = set.to_json();
  CHECK(text == "{\"d\":2,\"members\":[0,4,7],\"q\":3}");
  CHECK(VertexSet::from_json(text) == set);
}

TEST_CASE("cross-shape operations are rejected") {
  VertexSet a{TreeShape(2, 2)};
  VertexSet b{TreeShape(2, 3)};
  CHECK_THROWS_AS((void)a.is_subset_of(b), std::invalid_argument);
  CHECK(a != b);
}

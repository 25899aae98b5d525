#include <doctest.h>

#include <stdexcept>
#include <string>
#include <vector>

#include <vector>

#include "treeperim/bounds.hpp"
#include "treeperim/sep.hpp"

using namespace treeperim;

namespace {

RootedTree path(Count n) {
  std::vector<VertexId> parent(static_cast<std::size_t>(n));
  parent[0] = RootedTree::kNoParent;
  for (Count v = 1; v < n; ++v) parent[static_cast<std::size_t>(v)] = v - 1;
  return RootedTree(parent);
}

RootedTree star(Count leaves) {
  std::vector<VertexId> parent(static_cast<std::size_t>(leaves) + 1, 0);
  parent[0] = RootedTree::kNoParent;
  return RootedTree(parent);
}

// All rooted tree shapes on n vertices, as parent arrays with parent < child
// (an odometer over the digits parent[v] in [0, v)).
template <typename Fn>
void for_each_tree(Count n, Fn&& fn) {
  std::vector<VertexId> parent(static_cast<std::size_t>(n));
  parent[0] = RootedTree::kNoParent;
  std::vector<VertexId> digits(static_cast<std::size_t>(n), 0);
  for (;;) {
    for (Count v = 1; v < n; ++v)
      parent[static_cast<std::size_t>(v)] = digits[static_cast<std::size_t>(v)];
    fn(RootedTree(parent));
    Count v = n - 1;
    while (v >= 1) {
      if (++digits[static_cast<std::size_t>(v)] < v) break;
      digits[static_cast<std::size_t>(v)] = 0;
      --v;
    }
    if (v < 1) break;
  }
}

}  // namespace

TEST_CASE("layout separation on paths and stars") {
  const RootedTree p3 = path(3);
  CHECK(vs_of_layout(p3, Layout{{0, 1, 2}}) == 1);
  const RootedTree k13 = star(3);
  CHECK(vs_of_layout(k13, Layout{{0, 1, 2, 3}}) == 3);
  CHECK(vs_of_layout(k13, Layout{{1, 2, 3, 0}}) == 1);
  CHECK_THROWS_AS(vs_of_layout(k13, Layout{{0, 1, 2, 2}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(vs_of_layout(k13, Layout{{0, 1, 2}}), std::invalid_argument);
}

TEST_CASE("exact separation on small named trees") {
  CHECK(vs_exact(path(5)) == 1);
  CHECK(vs_exact(path(1)) == 0);
  CHECK(vs_exact(RootedTree::complete(TreeShape(2, 2))) == 1);
  CHECK(vs_exact(RootedTree::complete(TreeShape(3, 1))) == 1);
  CHECK_THROWS_AS(vs_exact(RootedTree::complete(TreeShape(2, 4))),
                  std::invalid_argument);
}

TEST_CASE("pathwidth of named trees") {
  CHECK(tree_pathwidth(path(1)) == 0);
  CHECK(tree_pathwidth(path(2)) == 1);
  CHECK(tree_pathwidth(path(5)) == 1);
  CHECK(tree_pathwidth(star(3)) == 1);
  CHECK(tree_pathwidth(RootedTree::complete(TreeShape(2, 4))) == 2);
  CHECK(tree_pathwidth(RootedTree::complete(TreeShape(3, 3))) == 3);
}

TEST_CASE("pathwidth equals exact separation on every small tree") {
  for (Count n = 1; n <= 8; ++n) {
    for_each_tree(n, [&](const RootedTree& t) {
      const Count a = vs_exact(t);
      const Count b = tree_pathwidth(t);
      if (a != b) {
        std::string ps;
        for (VertexId v = 0; v < t.size(); ++v)
          ps += std::to_string(t.parent(v)) + " ";
        INFO("parents: " << ps);
        CHECK(a == b);
      }
    });
  }
}

TEST_CASE("pathwidth equals exact separation on random larger trees") {
  Rng rng(2024);
  for (int i = 0; i < 200; ++i) {
    const Count n = 1 + static_cast<Count>(rng.below(12));
    const RootedTree t = RootedTree::random(n, rng);
    CHECK(vs_exact(t) == tree_pathwidth(t));
  }
}

TEST_CASE("pathwidth of complete trees matches the closed form") {
  for (auto [q, dmax] : {std::pair<int, int>{2, 9}, {3, 4}, {4, 3}, {5, 3}}) {
    for (int d = 0; d <= dmax; ++d) {
      TreeShape shape(q, d);
      CHECK(tree_pathwidth(RootedTree::complete(shape)) ==
            pathwidth_formula(q, d));
    }
  }
}

TEST_CASE("constructed layouts achieve the closed form") {
  for (auto [q, dmax] : {std::pair<int, int>{2, 8}, {3, 4}, {4, 3}, {6, 2}}) {
    for (int d = 0; d <= dmax; ++d) {
      TreeShape shape(q, d);
      const Layout layout = optimal_layout(shape);
      CHECK(vs_of_layout(RootedTree::complete(shape), layout) ==
            pathwidth_formula(q, d));
    }
  }
}

TEST_CASE("any layout separation dominates the exact peak") {
  Rng rng(31415);
  for (int i = 0; i < 100; ++i) {
    const Count n = 1 + static_cast<Count>(rng.below(12));
    const RootedTree t = RootedTree::random(n, rng);
    const Layout layout = Layout::random(n, rng);
    CHECK(vs_of_layout(t, layout) >= phi_peak_exhaustive(t));
  }
}

TEST_CASE("gap report on tiny trees") {
  const auto g = gap_report(TreeShape(2, 2));
  CHECK(g.vs == 1);
  CHECK(g.peak == 1);
  CHECK(g.gap == 0);
  const auto g5 = gap_report(TreeShape(5, 1));
  CHECK(g5.gap == 0);
}

TEST_CASE("layout json") {
  CHECK(Layout{{2, 0, 1}}.to_json() == "[2,0,1]");
}

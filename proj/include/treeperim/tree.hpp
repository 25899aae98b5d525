#ifndef TREEPERIM_TREE_HPP
#define TREEPERIM_TREE_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "treeperim/rng.hpp"

namespace treeperim {

using VertexId = std::int64_t;
using Count = std::int64_t;

/// Complete q-ary tree of depth d, represented implicitly by index
/// arithmetic. Vertices are numbered in breadth-first order: the root is 0,
/// levels come in order, and within a level indices run left to right. With
/// that numbering the children of v are q*v+1 ... q*v+q and the parent of
/// v != 0 is (v-1)/q, so navigation needs no adjacency storage and "u is to
/// the left of v" is exactly index order within a level.
class TreeShape {
 public:
  /// Builds the shape. Rejects q < 2, d < 0 and sizes that overflow int64.
  TreeShape(int branching, int depth);

  int branching() const { return q_; }
  int depth() const { return d_; }

  /// Total vertex count, (q^(d+1)-1)/(q-1).
  Count size() const { return level_begin_[d_ + 1]; }

  Count level_size(int level) const {
    return level_begin_[level + 1] - level_begin_[level];
  }
  Count level_begin(int level) const { return level_begin_[level]; }
  Count level_end(int level) const { return level_begin_[level + 1]; }

  /// Number of vertices in the subtree rooted at any vertex of `level`,
  /// i.e. a complete q-ary tree of depth d-level.
  Count subtree_size(int level) const;

  int level_of(VertexId v) const;
  bool valid(VertexId v) const { return v >= 0 && v < size(); }
  bool is_leaf(VertexId v) const { return v >= level_begin_[d_]; }

  std::optional<VertexId> parent(VertexId v) const;
  /// j-th child, j in [0, q). Caller must not ask a leaf.
  VertexId child(VertexId v, int j) const { return q_ * v + 1 + j; }
  Count first_child(VertexId v) const { return q_ * v + 1; }

  /// First index of the row of descendants of v that lie `rel_depth` levels
  /// below it. The row is the contiguous range
  /// [descendant_row_begin, descendant_row_begin + q^rel_depth).
  Count descendant_row_begin(VertexId v, int rel_depth) const;
  Count descendant_row_size(int rel_depth) const { return pow_q_[rel_depth]; }

  bool is_descendant(VertexId v, VertexId ancestor) const;

  /// All descendants of v (v included) in BFS order.
  std::vector<VertexId> descendants(VertexId v) const;

  bool operator==(const TreeShape& o) const {
    return q_ == o.q_ && d_ == o.d_;
  }
  bool operator!=(const TreeShape& o) const { return !(*this == o); }

 private:
  int q_;
  int d_;
  std::vector<Count> level_begin_;  // prefix sums of q^i, size d+2
  std::vector<Count> pow_q_;        // q^i for i in 0..d
};

/// Number of vertices of a complete q-ary tree of depth d-i; the size of a
/// subtree hanging at level i.
Count t_of(const TreeShape& shape, int level);

/// General rooted tree stored as a parent array; parent[root] == kNoParent.
/// Construction validates that parent pointers are acyclic and every vertex
/// reaches the root.
class RootedTree {
 public:
  static constexpr VertexId kNoParent = -1;

  explicit RootedTree(std::vector<VertexId> parent);

  Count size() const { return static_cast<Count>(parent_.size()); }
  VertexId root() const { return root_; }
  VertexId parent(VertexId v) const { return parent_[v]; }
  const std::vector<VertexId>& children(VertexId v) const {
    return children_[v];
  }
  int degree(VertexId v) const {
    return static_cast<int>(children_[v].size()) + (v == root_ ? 0 : 1);
  }

  /// The complete tree as an explicit rooted tree (ids match TreeShape).
  static RootedTree complete(const TreeShape& shape);

  /// Random labeled rooted tree: vertex 0 is the root and parent[i] is
  /// uniform over 0..i-1.
  static RootedTree random(Count n, Rng& rng);

 private:
  std::vector<VertexId> parent_;
  std::vector<std::vector<VertexId>> children_;
  VertexId root_ = 0;
};

}  // namespace treeperim

#endif

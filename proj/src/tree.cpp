#include "treeperim/tree.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace treeperim {

TreeShape::TreeShape(int branching, int depth) : q_(branching), d_(depth) {
  if (q_ < 2) throw std::invalid_argument("TreeShape: branching must be >= 2");
  if (d_ < 0) throw std::invalid_argument("TreeShape: depth must be >= 0");
  level_begin_.reserve(d_ + 2);
  pow_q_.reserve(d_ + 1);
  level_begin_.push_back(0);
  Count pw = 1;
  for (int i = 0; i <= d_; ++i) {
    pow_q_.push_back(pw);
    Count next = level_begin_.back();
    if (next > std::numeric_limits<Count>::max() - pw)
      throw std::overflow_error("TreeShape: size overflows int64");
    level_begin_.push_back(next + pw);
    if (i < d_) {
      if (pw > std::numeric_limits<Count>::max() / q_)
        throw std::overflow_error("TreeShape: size overflows int64");
      pw *= q_;
    }
  }
}

Count TreeShape::subtree_size(int level) const {
  if (level < 0 || level > d_)
    throw std::out_of_range("TreeShape::subtree_size: level out of range");
  // (q^(d-level+1) - 1) / (q - 1), assembled from the cached powers so the
  // intermediate cannot overflow when size() did not.
  Count total = 0;
  for (int i = level; i <= d_; ++i) total += pow_q_[i - level];
  return total;
}

int TreeShape::level_of(VertexId v) const {
  if (!valid(v)) throw std::out_of_range("TreeShape::level_of: bad vertex");
  auto it = std::upper_bound(level_begin_.begin(), level_begin_.end(), v);
  return static_cast<int>(it - level_begin_.begin()) - 1;
}

std::optional<VertexId> TreeShape::parent(VertexId v) const {
  if (!valid(v)) throw std::out_of_range("TreeShape::parent: bad vertex");
  if (v == 0) return std::nullopt;
  return (v - 1) / q_;
}

Count TreeShape::descendant_row_begin(VertexId v, int rel_depth) const {
  // A_0 = v, A_{j+1} = q*A_j + 1.
  Count a = v;
  for (int j = 0; j < rel_depth; ++j) a = q_ * a + 1;
  return a;
}

bool TreeShape::is_descendant(VertexId v, VertexId ancestor) const {
  int lv = level_of(v);
  int la = level_of(ancestor);
  if (lv < la) return false;
  Count begin = descendant_row_begin(ancestor, lv - la);
  return v >= begin && v < begin + pow_q_[lv - la];
}

std::vector<VertexId> TreeShape::descendants(VertexId v) const {
  if (!valid(v)) throw std::out_of_range("TreeShape::descendants: bad vertex");
  int lv = level_of(v);
  std::vector<VertexId> out;
  out.reserve(subtree_size(lv));
  for (int j = 0; lv + j <= d_; ++j) {
    Count begin = descendant_row_begin(v, j);
    for (Count k = 0; k < pow_q_[j]; ++k) out.push_back(begin + k);
  }
  return out;
}

Count t_of(const TreeShape& shape, int level) {
  return shape.subtree_size(level);
}

RootedTree::RootedTree(std::vector<VertexId> parent)
    : parent_(std::move(parent)) {
  const Count n = static_cast<Count>(parent_.size());
  if (n == 0) throw std::invalid_argument("RootedTree: empty");
  root_ = kNoParent;
  for (VertexId v = 0; v < n; ++v) {
    if (parent_[v] == kNoParent) {
      if (root_ != kNoParent)
        throw std::invalid_argument("RootedTree: multiple roots");
      root_ = v;
    } else if (parent_[v] < 0 || parent_[v] >= n) {
      throw std::invalid_argument("RootedTree: parent index out of range");
    }
  }
  if (root_ == kNoParent) throw std::invalid_argument("RootedTree: no root");
  children_.assign(n, {});
  for (VertexId v = 0; v < n; ++v)
    if (v != root_) children_[parent_[v]].push_back(v);
  // Acyclicity / reachability: walk up from each vertex with step limit n.
  for (VertexId v = 0; v < n; ++v) {
    VertexId x = v;
    Count steps = 0;
    while (x != root_) {
      x = parent_[x];
      if (++steps > n)
        throw std::invalid_argument("RootedTree: parent pointers cycle");
    }
  }
}

RootedTree RootedTree::complete(const TreeShape& shape) {
  std::vector<VertexId> parent(shape.size());
  parent[0] = kNoParent;
  for (VertexId v = 1; v < shape.size(); ++v)
    parent[v] = (v - 1) / shape.branching();
  return RootedTree(std::move(parent));
}

RootedTree RootedTree::random(Count n, Rng& rng) {
  if (n <= 0) throw std::invalid_argument("RootedTree::random: n must be > 0");
  std::vector<VertexId> parent(n);
  parent[0] = kNoParent;
  for (Count v = 1; v < n; ++v)
    parent[v] = static_cast<VertexId>(rng.below(static_cast<std::uint64_t>(v)));
  return RootedTree(std::move(parent));
}

}  // namespace treeperim

#ifndef TREEPERIM_SEP_HPP
#define TREEPERIM_SEP_HPP

#include <string>
#include <vector>

#include "treeperim/tree.hpp"

namespace treeperim {

/// Linear layout: order[i] is the vertex at rank i+1.
struct Layout {
  std::vector<VertexId> order;
  std::string to_json() const;
  static Layout random(Count n, Rng& rng);
};

/// Maximum border size over the layout's prefixes.
Count vs_of_layout(const RootedTree& tree, const Layout& layout);

/// Exact vertex separation number by dynamic programming over vertex
/// subsets (the prefix border depends only on the prefix set). n <= 20.
Count vs_exact(const RootedTree& tree);

/// Exact pathwidth of a tree, computed bottom-up with per-subtree summaries.
///
/// The computation rests on the path characterization: vs(T) <= k (k >= 1)
/// iff T has a path P such that every component of T - V(P) has vs <= k-1.
/// Relative to a root, a subtree X is summarized by a strictly decreasing
/// chain of stage values. Stage 1 is vs(X); when no level-vs(X) path can
/// reach the root of X, the chain continues with the summary of the residue
/// (what is left hanging above the best such path). The terminal stage
/// records whether a path of that stage's level can end at the root (Open,
/// with the root-path threshold beta) or merely pass below it (Through).
Count tree_pathwidth(const RootedTree& tree);

/// Layout of the complete tree meeting pathwidth_formula(q, d): post-order
/// for q >= 3; for q = 2 the half-depth scheme that finishes both
/// grandchild subtrees of a child before stepping through that child.
Layout optimal_layout(const TreeShape& shape);

struct GapReport {
  int q;
  int d;
  Count vs;
  Count peak;
  Count gap;
};

/// Vertex separation (via the pathwidth closed form) against the exact
/// isoperimetric peak of the complete tree.
GapReport gap_report(const TreeShape& shape);

/// Peak of the profile of an arbitrary tree by subset enumeration; n <= 20.
/// Validation companion for vs_of_layout and tree_pathwidth.
Count phi_peak_exhaustive(const RootedTree& tree);

}  // namespace treeperim

#endif

#ifndef TREEPERIM_ORACLE_HPP
#define TREEPERIM_ORACLE_HPP

#include <array>
#include <optional>
#include <vector>

#include "treeperim/vset.hpp"

namespace treeperim {

/// Exact minimum border over all s-subsets, by enumerating combinations.
/// Refuses shapes larger than `size_cap` vertices.
Count phi_bruteforce(const TreeShape& shape, Count s, Count size_cap = 22);

/// Exact isoperimetric profile of a complete tree via bottom-up dynamic
/// programming.
///
/// For a subtree the root is in one of three states: member (in S),
/// border (outside S with a child in S, so it is border no matter what the
/// parent does), or clean (outside S, no child in S). Costs count border
/// vertices inside the subtree; a clean root is not charged - if its parent
/// is a member the charge is added during the parent's merge, and at the
/// tree root a clean vertex is free. All subtrees of equal depth are
/// isomorphic, so one table per depth suffices and merges are min-plus
/// convolutions over the q children.
class ProfileOracle {
 public:
  /// Builds all per-depth tables. The merge work grows quadratically with
  /// the vertex count, so shapes beyond `size_budget` are refused.
  explicit ProfileOracle(const TreeShape& shape, Count size_budget = 100000);

  const TreeShape& shape() const { return shape_; }
  const std::vector<Count>& values() const { return values_; }
  Count phi(Count s) const;

  /// An optimal set of cardinality s, reconstructed from the tables.
  VertexSet witness(Count s) const;

 private:
  static constexpr int kMember = 0;
  static constexpr int kBorder = 1;
  static constexpr int kClean = 2;

  struct DepthTables {
    // cost[state][s] for a subtree of this depth.
    std::array<std::vector<Count>, 3> cost;
    // Partial merges over the first j children, kept for reconstruction.
    // member_partial[j][s]: parent in S. out_partial[j][flag][s]: parent
    // outside S, flag = some merged child is a member.
    std::vector<std::vector<Count>> member_partial;
    std::vector<std::array<std::vector<Count>, 2>> out_partial;
  };

  void expand(VertexId v, int depth, int state, Count s, VertexSet& out) const;

  TreeShape shape_;
  std::vector<DepthTables> tables_;  // by subtree depth, 0..d
  std::vector<Count> values_;
};

struct ProfileTable {
  TreeShape shape;
  std::vector<Count> values;
  std::optional<std::vector<VertexSet>> witnesses;
};

/// Profile for all s, optionally with one witness per cardinality.
ProfileTable phi_profile_dp(const TreeShape& shape, bool want_witnesses = false);

struct PeakReport {
  TreeShape shape;
  Count peak;
  std::vector<Count> argmax_s;
};

PeakReport phi_peak(const TreeShape& shape);

struct TotalReport {
  Count sum;              // sum of phi over all s
  double normalized_sum;  // sum over s >= 1 of phi(s)/s
};

TotalReport phi_total(const TreeShape& shape);

/// Every optimal set of cardinality s. Refuses shapes above `size_cap`.
std::vector<VertexSet> enumerate_optima(const TreeShape& shape, Count s,
                                        Count size_cap = 16);

struct NestingReport {
  TreeShape shape;
  /// step_nested[s]: some optimum at s is contained in some optimum at s+1.
  std::vector<bool> step_nested;
  /// A chain of optima, one per cardinality, ordered by inclusion.
  bool full_chain;
};

NestingReport nesting_report(const TreeShape& shape, Count size_cap = 16);

}  // namespace treeperim

#endif

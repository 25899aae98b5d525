#ifndef TREEPERIM_WITNESS_HPP
#define TREEPERIM_WITNESS_HPP

#include <optional>
#include <string>
#include <vector>

#include "treeperim/oracle.hpp"
#include "treeperim/vset.hpp"

namespace treeperim {

enum class Regime { QAtLeast5, Q3or4, Q2 };

/// Cardinality at which the matching lower-bound argument pins the border:
///   q >= 5:      sum over i=1..d of 2*t_i
///   q in {3,4}:  sum over i=1..D of (t_i - 1),   D = d - ceil(log_q 2d)
///   q = 2:       sum over i=1..D of (t_{2i} - 1), D = floor((d - ceil(log2 3d))/2)
struct CriticalSizes {
  int q;
  int d;
  Count size;
  Regime regime;
  std::optional<int> cap_levels;  // D, for the q <= 4 regimes
};

CriticalSizes critical_size(int q, int d);
const char* to_string(Regime r);

/// First s vertices exited by a depth-first traversal from the root,
/// children left to right.
VertexSet postorder_prefix(const TreeShape& shape, Count s);

/// Constructive small-border set of a given cardinality for q in {3,4},
/// built by a root-to-leaf recursion that at each round either descends
/// without placing vertices, fills one almost-complete subtree, fills one
/// complete plus one almost-complete subtree, or fills several complete
/// subtrees. The path bookkeeping splits into s0/s1/s2 and the border is
/// exactly s1p (the stripped subtree tops) plus s2.
struct CaseStep {
  int round;       // 1-based
  int case_id;     // 1..4
  Count r_before;  // vertices still to place entering the round
  Count placed;    // vertices placed this round
};

struct UpperConstruction {
  TreeShape shape;
  Count target;
  std::vector<VertexId> path;
  std::vector<CaseStep> schedule;
  VertexSet set;
  std::vector<VertexId> s0, s1, s1p, s2;
  Count boundary_count;
  bool observations_ok;
  std::string observation_fail;

  struct Adjustment {
    VertexId strip_vertex;
    Count removed;
    std::vector<VertexId> refill;
    VertexSet set;
    Count boundary_count;
  };
  /// Variant with the deepest reached subtree stripped and the freed slots
  /// refilled from s1p then s2; present when the strip level exists and the
  /// refill pool suffices.
  std::optional<Adjustment> adjusted;

  std::string to_json() const;
};

UpperConstruction build_extremal_set(const TreeShape& shape, Count s);

/// Runs the construction for every cardinality and compares the better of
/// |border(S)| and |border(adjusted)| against d - floor(log_q d) + 2.
struct UpperBoundSweep {
  TreeShape shape;
  Count bound;
  Count max_boundary;
  std::vector<Count> failing_s;
  bool all_within_bound;
  bool observations_ok;
  std::string observation_fail;
};

UpperBoundSweep upper_bound_sweep(const TreeShape& shape);

/// Smallest d in [d_lo, d_hi] from which every deeper sweep stays within the
/// bound; d_hi + 1 when none does.
int upper_bound_threshold(int q, int d_lo, int d_hi);

/// Optimal sets at sizes s and s+1 inside a standalone ternary tree of depth
/// dsub, with their borders and a containment verdict for the extracted
/// witnesses.
struct LocalStructureReport {
  TreeShape shape;
  Count s;
  VertexSet witness_s;
  VertexSet witness_s1;
  Count phi_s;
  Count phi_s1;
  bool witness_contained;
  std::string to_json() const;
};

LocalStructureReport local_structure_report(int dsub, Count s);

/// Fraction of cardinalities where the post-order prefix border equals the
/// exact profile value; also verifies prefix borders never beat it.
struct PostorderRate {
  TreeShape shape;
  Count equal_count;
  Count total;
  bool never_below;
};

PostorderRate postorder_equality_rate(const TreeShape& shape,
                                      const ProfileOracle& oracle);

}  // namespace treeperim

#endif

#ifndef TREEPERIM_COMPRESS_HPP
#define TREEPERIM_COMPRESS_HPP

#include <optional>
#include <string>
#include <vector>

#include "treeperim/vset.hpp"

namespace treeperim {

enum class StepKind { LeftTreeswap, DownExchange, AeolianMove };

struct CompressionStep {
  StepKind kind;
  VertexId u;
  VertexId v;
  Count moved;  // vertices moved; meaningful for aeolian moves, 0 otherwise
  Count boundary_before;
  Count boundary_after;
};

enum class Termination { Fixpoint, StepCap };

struct CompressionTrace {
  VertexSet initial;
  VertexSet result;
  std::vector<CompressionStep> steps;
  Termination terminated = Termination::Fixpoint;

  /// One JSON object per line, fields kind,u,v,moved,boundary_before,
  /// boundary_after.
  std::string to_json_lines() const;
};

struct FixResult {
  VertexSet set;
  CompressionTrace trace;
  bool fixpoint() const { return trace.terminated == Termination::Fixpoint; }
};

struct FixOptions {
  /// 0 means default: TREEPERIM_MAX_STEPS env var if set, else |V|^2.
  Count step_cap = 0;
};

/// Left-most swappable pair on the first level that is not left-ordered,
/// so all earlier levels are left-ordered. Ties: smaller v, then smaller u.
std::optional<SwappablePair> find_swappable(const VertexSet& s);

/// Position-wise exchange of membership between Desc(u) and Desc(v).
/// u and v must lie on the same level with u left of v.
VertexSet treeswap(const VertexSet& s, VertexId u, VertexId v);

/// Repeated treeswap on the left-most swappable pair until left-ordered.
FixResult left_fix(const VertexSet& s, const FixOptions& opt = {});

/// First pair (u in S, v outside, lexicographic by u then v) whose exchange
/// either strictly shrinks the border, or keeps it equal while replacing u
/// with a vertex of its own subtree further from the root.
std::optional<SwappablePair> find_down_swappable(const VertexSet& s);

/// Repeated down-exchange until no down-swappable pair remains.
FixResult down_fix(const VertexSet& s, const FixOptions& opt = {});

/// Alternates left and down steps until the set is both left-ordered and
/// down-compressed.
FixResult left_down_fix(const VertexSet& s, const FixOptions& opt = {});

/// One driver step: a left treeswap if the set is not left-ordered, else a
/// down exchange if one exists, else the aeolian move with the earliest
/// (u, v) pair moving the maximum compressing count. Empty when the set is
/// aeolian-compressed.
std::optional<std::pair<VertexSet, CompressionStep>> aeolian_step(
    const VertexSet& s);

/// Drives aeolian_step to a fixpoint. Revisiting a set already seen in this
/// run is never allowed (equal-border moves whose target was visited are
/// skipped), which keeps the recursion from orbiting between equally good
/// sets.
FixResult aeolian_fix(const VertexSet& s, const FixOptions& opt = {});

struct TrichotomyResult {
  bool ok = true;
  VertexId counterexample = -1;
};

/// Checks that every member u falls into one of the three shapes a left- and
/// down-compressed set allows: all children in S; one child out and that
/// child has a child out; or exactly two children out, the left one split
/// (some child in, some out) and the right one empty below.
TrichotomyResult check_trichotomy(const VertexSet& s);

struct PeakOrderResult {
  bool ok = true;
  VertexId u = -1;
  VertexId v = -1;
};

/// For every same-level pair u left of v whose subtrees both meet S, the
/// whole of Desc(u) except possibly u itself must be in S.
PeakOrderResult check_peak_order(const VertexSet& s);

/// For every vertex u, the levels where Desc(u) meets S form a suffix of
/// u's level range (once a subtree is touched, every deeper level is
/// touched). Holds for left- and down-compressed sets.
bool subtree_levels_contiguous(const VertexSet& s,
                               VertexId* counterexample = nullptr);

const char* to_string(StepKind k);

}  // namespace treeperim

#endif

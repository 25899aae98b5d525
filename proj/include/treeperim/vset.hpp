#ifndef TREEPERIM_VSET_HPP
#define TREEPERIM_VSET_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "treeperim/tree.hpp"

namespace treeperim {

/// Vertex subset of a complete tree, stored as a bitmap with cached
/// cardinality and per-level counts. Cross-shape operations are rejected.
class VertexSet {
 public:
  explicit VertexSet(TreeShape shape);

  static VertexSet from_members(const TreeShape& shape,
                                const std::vector<VertexId>& members);
  /// s vertices drawn uniformly without replacement.
  static VertexSet random(const TreeShape& shape, Count s, Rng& rng);

  const TreeShape& shape() const { return shape_; }
  Count cardinality() const { return cardinality_; }
  bool empty() const { return cardinality_ == 0; }
  bool full() const { return cardinality_ == shape_.size(); }

  bool contains(VertexId v) const {
    return (bits_[static_cast<std::size_t>(v >> 6)] >> (v & 63)) & 1;
  }
  void insert(VertexId v);
  void erase(VertexId v);

  const std::vector<Count>& level_counts() const { return level_counts_; }
  std::vector<VertexId> members() const;

  bool operator==(const VertexSet& o) const {
    return shape_ == o.shape_ && bits_ == o.bits_;
  }
  bool operator!=(const VertexSet& o) const { return !(*this == o); }

  bool is_subset_of(const VertexSet& o) const;
  std::uint64_t hash() const;

  /// JSON form {"q":..,"d":..,"members":[...]} with sorted members.
  std::string to_json() const;
  static VertexSet from_json(const std::string& text);

 private:
  TreeShape shape_;
  std::vector<std::uint64_t> bits_;
  Count cardinality_ = 0;
  std::vector<Count> level_counts_;
};

/// The vertex border delta(S): vertices outside S with a neighbor in S.
using Boundary = VertexSet;
Boundary boundary(const VertexSet& s);
Count boundary_size(const VertexSet& s);
bool in_boundary(const VertexSet& s, VertexId v);

struct SwappablePair {
  VertexId u;
  VertexId v;
};

/// True iff no level holds a swappable pair: for u left of v, either
/// u outside / v inside S, or both outside with only v having children in S.
/// When false and `witness` is given, the left-most offending pair (smallest
/// v, then smallest u, on the first bad level) is reported.
bool is_left_ordered(const VertexSet& s, SwappablePair* witness = nullptr);

}  // namespace treeperim

#endif

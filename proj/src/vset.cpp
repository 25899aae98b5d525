#include "treeperim/vset.hpp"

#include <bit>
#include <stdexcept>

#include <json.hpp>

namespace treeperim {

VertexSet::VertexSet(TreeShape shape)
    : shape_(std::move(shape)),
      bits_(static_cast<std::size_t>((shape_.size() + 63) / 64), 0),
      level_counts_(static_cast<std::size_t>(shape_.depth()) + 1, 0) {}

VertexSet VertexSet::from_members(const TreeShape& shape,
                                  const std::vector<VertexId>& members) {
  VertexSet s(shape);
  for (VertexId v : members) {
    if (!shape.valid(v))
      throw std::out_of_range("VertexSet::from_members: bad vertex");
    s.insert(v);
  }
  return s;
}

VertexSet VertexSet::random(const TreeShape& shape, Count s, Rng& rng) {
  if (s < 0 || s > shape.size())
    throw std::out_of_range("VertexSet::random: bad cardinality");
  // Partial Fisher-Yates over the id range.
  std::vector<VertexId> ids(static_cast<std::size_t>(shape.size()));
  for (Count i = 0; i < shape.size(); ++i) ids[static_cast<std::size_t>(i)] = i;
  VertexSet out(shape);
  for (Count i = 0; i < s; ++i) {
    const Count j =
        i + static_cast<Count>(rng.below(static_cast<std::uint64_t>(shape.size() - i)));
    std::swap(ids[static_cast<std::size_t>(i)], ids[static_cast<std::size_t>(j)]);
    out.insert(ids[static_cast<std::size_t>(i)]);
  }
  return out;
}

void VertexSet::insert(VertexId v) {
  if (!shape_.valid(v)) throw std::out_of_range("VertexSet::insert: bad vertex");
  auto& word = bits_[static_cast<std::size_t>(v >> 6)];
  const std::uint64_t mask = 1ULL << (v & 63);
  if (word & mask) return;
  word |= mask;
  ++cardinality_;
  ++level_counts_[static_cast<std::size_t>(shape_.level_of(v))];
}

void VertexSet::erase(VertexId v) {
  if (!shape_.valid(v)) throw std::out_of_range("VertexSet::erase: bad vertex");
  auto& word = bits_[static_cast<std::size_t>(v >> 6)];
  const std::uint64_t mask = 1ULL << (v & 63);
  if (!(word & mask)) return;
  word &= ~mask;
  --cardinality_;
  --level_counts_[static_cast<std::size_t>(shape_.level_of(v))];
}

std::vector<VertexId> VertexSet::members() const {
  std::vector<VertexId> out;
  out.reserve(static_cast<std::size_t>(cardinality_));
  for (std::size_t w = 0; w < bits_.size(); ++w) {
    std::uint64_t word = bits_[w];
    while (word) {
      const int b = std::countr_zero(word);
      out.push_back(static_cast<VertexId>(w * 64 + static_cast<std::size_t>(b)));
      word &= word - 1;
    }
  }
  return out;
}

bool VertexSet::is_subset_of(const VertexSet& o) const {
  if (shape_ != o.shape_)
    throw std::invalid_argument("VertexSet::is_subset_of: shape mismatch");
  for (std::size_t w = 0; w < bits_.size(); ++w)
    if (bits_[w] & ~o.bits_[w]) return false;
  return true;
}

std::uint64_t VertexSet::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::uint64_t w : bits_) {
    h ^= w;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string VertexSet::to_json() const {
  nlohmann::json j;
  j["q"] = shape_.branching();
  j["d"] = shape_.depth();
  j["members"] = members();
  return j.dump();
}

VertexSet VertexSet::from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  TreeShape shape(j.at("q").get<int>(), j.at("d").get<int>());
  return from_members(shape, j.at("members").get<std::vector<VertexId>>());
}

bool in_boundary(const VertexSet& s, VertexId v) {
  if (s.contains(v)) return false;
  const TreeShape& shape = s.shape();
  if (v != 0 && s.contains((v - 1) / shape.branching())) return true;
  if (!shape.is_leaf(v)) {
    const Count first = shape.first_child(v);
    for (int j = 0; j < shape.branching(); ++j)
      if (s.contains(first + j)) return true;
  }
  return false;
}

Boundary boundary(const VertexSet& s) {
  Boundary out(s.shape());
  for (VertexId v = 0; v < s.shape().size(); ++v)
    if (in_boundary(s, v)) out.insert(v);
  return out;
}

Count boundary_size(const VertexSet& s) {
  Count n = 0;
  for (VertexId v = 0; v < s.shape().size(); ++v)
    if (in_boundary(s, v)) ++n;
  return n;
}

bool is_left_ordered(const VertexSet& s, SwappablePair* witness) {
  const TreeShape& shape = s.shape();
  const int q = shape.branching();
  for (int level = 0; level <= shape.depth(); ++level) {
    // Scan the level once, left to right. Track the left-most non-member seen
    // so far (condition 1) and the left-most non-member whose children avoid
    // S (condition 2). The first v completing either condition gives the
    // left-most pair: smallest v, then smallest u.
    VertexId first_out = -1;
    VertexId first_out_clean = -1;
    for (VertexId v = shape.level_begin(level); v < shape.level_end(level);
         ++v) {
      const bool member = s.contains(v);
      bool child_in_s = false;
      if (!member && !shape.is_leaf(v)) {
        const Count first = shape.first_child(v);
        for (int j = 0; j < q; ++j)
          if (s.contains(first + j)) {
            child_in_s = true;
            break;
          }
      }
      if (member && first_out >= 0) {
        if (witness) *witness = {first_out, v};
        return false;
      }
      if (!member && child_in_s && first_out_clean >= 0) {
        if (witness) *witness = {first_out_clean, v};
        return false;
      }
      if (!member) {
        if (first_out < 0) first_out = v;
        if (!child_in_s && first_out_clean < 0) first_out_clean = v;
      }
    }
  }
  return true;
}

}  // namespace treeperim

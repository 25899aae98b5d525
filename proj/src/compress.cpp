#include "treeperim/compress.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace treeperim {
namespace {

Count resolve_step_cap(const VertexSet& s, const FixOptions& opt) {
  if (opt.step_cap > 0) return opt.step_cap;
  if (const char* env = std::getenv("TREEPERIM_MAX_STEPS")) {
    const long long v = std::atoll(env);
    if (v > 0) return static_cast<Count>(v);
  }
  const Count n = s.shape().size();
  return n * n;
}

// Membership plus derived per-vertex counters, updated in O(q) per toggle.
// bnd(x) = x outside S and (parent in S or some child in S).
struct BoundaryState {
  const TreeShape* shape = nullptr;
  std::vector<char> in;
  std::vector<int> child_in;    // children of x inside S
  std::vector<char> parent_in;  // parent of x inside S
  std::vector<char> bnd;
  Count bsize = 0;
  Count depth_sum = 0;

  void build(const VertexSet& s) {
    shape = &s.shape();
    const Count n = shape->size();
    in.assign(n, 0);
    child_in.assign(n, 0);
    parent_in.assign(n, 0);
    bnd.assign(n, 0);
    bsize = 0;
    depth_sum = 0;
    for (VertexId v : s.members()) {
      in[v] = 1;
      depth_sum += shape->level_of(v);
      if (v != 0) ++child_in[(v - 1) / shape->branching()];
      if (!shape->is_leaf(v)) {
        const Count first = shape->first_child(v);
        for (int j = 0; j < shape->branching(); ++j) parent_in[first + j] = 1;
      }
    }
    for (VertexId v = 0; v < n; ++v) {
      bnd[v] = !in[v] && (parent_in[v] || child_in[v] > 0);
      if (bnd[v]) ++bsize;
    }
  }

  void refresh(VertexId x) {
    const char nb = !in[x] && (parent_in[x] || child_in[x] > 0);
    if (nb != bnd[x]) {
      bsize += nb ? 1 : -1;
      bnd[x] = nb;
    }
  }

  void toggle(VertexId v) {
    const int q = shape->branching();
    in[v] ^= 1;
    depth_sum += in[v] ? shape->level_of(v) : -shape->level_of(v);
    refresh(v);
    if (v != 0) {
      const VertexId p = (v - 1) / q;
      child_in[p] += in[v] ? 1 : -1;
      refresh(p);
    }
    if (!shape->is_leaf(v)) {
      const Count first = shape->first_child(v);
      for (int j = 0; j < q; ++j) {
        parent_in[first + j] = in[v];
        refresh(first + j);
      }
    }
  }

  // Border change if member u were removed, nothing else touched.
  Count delta_remove(VertexId u) const {
    const int q = shape->branching();
    Count d = 0;
    if (parent_in[u] || child_in[u] > 0) ++d;  // u becomes border
    if (u != 0) {
      const VertexId p = (u - 1) / q;
      if (bnd[p] && !parent_in[p] && child_in[p] == 1) --d;
    }
    if (!shape->is_leaf(u)) {
      const Count first = shape->first_child(u);
      for (int j = 0; j < q; ++j) {
        const VertexId c = first + j;
        if (bnd[c] && child_in[c] == 0) --d;  // only u made c border
      }
    }
    return d;
  }

  // Border change if non-member v were inserted, nothing else touched.
  Count delta_insert(VertexId v) const {
    const int q = shape->branching();
    Count d = 0;
    if (bnd[v]) --d;
    if (v != 0) {
      const VertexId p = (v - 1) / q;
      if (!in[p] && !bnd[p]) ++d;
    }
    if (!shape->is_leaf(v)) {
      const Count first = shape->first_child(v);
      for (int j = 0; j < q; ++j) {
        const VertexId c = first + j;
        if (!in[c] && !bnd[c]) ++d;
      }
    }
    return d;
  }

  // Exact border change for the u -> v exchange (u in S, v outside).
  Count delta_exchange(VertexId u, VertexId v) const {
    const int q = shape->branching();
    std::vector<VertexId> affected;
    affected.reserve(2 * static_cast<std::size_t>(q) + 4);
    auto push = [&](VertexId x) {
      for (VertexId y : affected)
        if (y == x) return;
      affected.push_back(x);
    };
    auto collect = [&](VertexId x) {
      push(x);
      if (x != 0) push((x - 1) / q);
      if (!shape->is_leaf(x)) {
        const Count first = shape->first_child(x);
        for (int j = 0; j < q; ++j) push(first + j);
      }
    };
    collect(u);
    collect(v);
    auto in_after = [&](VertexId x) {
      bool r = in[x];
      if (x == u) r = false;
      if (x == v) r = true;
      return r;
    };
    Count d = 0;
    for (const VertexId x : affected) {
      bool pin = parent_in[x];
      if (x != 0) {
        const VertexId p = (x - 1) / q;
        if (p == u) pin = false;
        if (p == v) pin = true;
      }
      int cin = child_in[x];
      if (u != 0 && (u - 1) / q == x) --cin;
      if (v != 0 && (v - 1) / q == x) ++cin;
      const bool after = !in_after(x) && (pin || cin > 0);
      d += static_cast<Count>(after) - static_cast<Count>(bnd[x]);
    }
    return d;
  }
};

bool within_distance_two(const TreeShape& shape, VertexId a, VertexId b) {
  const int q = shape.branching();
  const VertexId pa = a == 0 ? -1 : (a - 1) / q;
  const VertexId pb = b == 0 ? -1 : (b - 1) / q;
  const VertexId ppa = pa <= 0 ? -1 : (pa - 1) / q;
  const VertexId ppb = pb <= 0 ? -1 : (pb - 1) / q;
  return pa == b || pb == a || (pa >= 0 && pa == pb) || ppa == b || ppb == a;
}

std::optional<SwappablePair> find_down_swappable_impl(
    const VertexSet& s, const BoundaryState& state) {
  const TreeShape& shape = s.shape();
  const Count n = shape.size();
  if (s.empty() || s.full()) return std::nullopt;
  std::vector<Count> dins(n, 0);
  std::vector<VertexId> outs;
  outs.reserve(n - s.cardinality());
  for (VertexId v = 0; v < n; ++v)
    if (!state.in[v]) {
      dins[v] = state.delta_insert(v);
      outs.push_back(v);
    }
  for (VertexId u = 0; u < n; ++u) {
    if (!state.in[u]) continue;
    const Count dr = state.delta_remove(u);
    for (VertexId v : outs) {
      Count d;
      if (within_distance_two(shape, u, v))
        d = state.delta_exchange(u, v);
      else
        d = dr + dins[v];
      if (d < 0) return SwappablePair{u, v};
      if (d == 0 && shape.is_descendant(v, u)) return SwappablePair{u, v};
    }
  }
  return std::nullopt;
}

struct SeenSets {
  std::unordered_set<std::uint64_t> keys;
  static std::uint64_t key(const VertexSet& s) {
    return s.hash() ^ (static_cast<std::uint64_t>(s.cardinality()) << 48);
  }
  bool contains(const VertexSet& s) const { return keys.count(key(s)) > 0; }
  void insert(const VertexSet& s) { keys.insert(key(s)); }
};

struct AeolianMove {
  VertexId u;
  VertexId v;
  Count moved;
  VertexSet result;
  Count boundary_after;
};

// Members of Desc(v), deepest row first, right to left; at most `cap` of them.
std::vector<VertexId> removal_candidates(const VertexSet& s, VertexId v,
                                         Count cap) {
  const TreeShape& shape = s.shape();
  const int lv = shape.level_of(v);
  std::vector<VertexId> out;
  for (int rel = shape.depth() - lv; rel >= 0 && (Count)out.size() < cap;
       --rel) {
    const Count begin = shape.descendant_row_begin(v, rel);
    for (Count k = shape.descendant_row_size(rel) - 1;
         k >= 0 && (Count)out.size() < cap; --k)
      if (s.contains(begin + k)) out.push_back(begin + k);
  }
  return out;
}

// Non-members of Desc(u), deepest row first, left to right; at most `cap`.
std::vector<VertexId> addition_candidates(const VertexSet& s, VertexId u,
                                          Count cap) {
  const TreeShape& shape = s.shape();
  const int lu = shape.level_of(u);
  std::vector<VertexId> out;
  for (int rel = shape.depth() - lu; rel >= 0 && (Count)out.size() < cap;
       --rel) {
    const Count begin = shape.descendant_row_begin(u, rel);
    for (Count k = 0;
         k < shape.descendant_row_size(rel) && (Count)out.size() < cap; ++k)
      if (!s.contains(begin + k)) out.push_back(begin + k);
  }
  return out;
}

// Earliest (u, v) same-level pair admitting a compressing move; the move
// transfers the largest compressing count. `seen`, when given, forbids
// equal-border moves onto already visited sets.
std::optional<AeolianMove> find_aeolian_move(const VertexSet& s,
                                             BoundaryState& state,
                                             const SeenSets* seen) {
  const TreeShape& shape = s.shape();
  const Count n = shape.size();
  const Count b0 = state.bsize;
  // Subtree member counts by one reverse sweep.
  std::vector<Count> sub(n, 0);
  for (VertexId v = n - 1; v >= 0; --v) {
    if (state.in[v]) ++sub[v];
    if (v != 0) sub[(v - 1) / shape.branching()] += sub[v];
  }
  for (int level = 0; level <= shape.depth(); ++level) {
    const Count lo = shape.level_begin(level);
    const Count hi = shape.level_end(level);
    const Count full = shape.subtree_size(level);
    for (VertexId u = lo; u < hi; ++u) {
      if (sub[u] == full) continue;  // no room in Desc(u)
      for (VertexId v = u + 1; v < hi; ++v) {
        if (sub[v] == 0) continue;  // nothing to take from Desc(v)
        const Count cap = std::min(full - sub[u], sub[v]);
        const auto rem = removal_candidates(s, v, cap);
        const auto add = addition_candidates(s, u, cap);
        const Count m_max = std::min<Count>(rem.size(), add.size());
        if (m_max == 0) continue;
        std::vector<Count> bs(static_cast<std::size_t>(m_max) + 1, 0);
        for (Count m = 1; m <= m_max; ++m) {
          state.toggle(rem[m - 1]);
          state.toggle(add[m - 1]);
          bs[m] = state.bsize;
        }
        // Roll back the scratch state.
        for (Count m = m_max; m >= 1; --m) {
          state.toggle(add[m - 1]);
          state.toggle(rem[m - 1]);
        }
        for (Count m = m_max; m >= 1; --m) {
          if (bs[m] > b0) continue;
          VertexSet target = s;
          for (Count i = 0; i < m; ++i) {
            target.erase(rem[i]);
            target.insert(add[i]);
          }
          if (bs[m] == b0 && seen && seen->contains(target)) continue;
          return AeolianMove{u, v, m, std::move(target), bs[m]};
        }
      }
    }
  }
  return std::nullopt;
}

struct DriverStep {
  VertexSet next;
  CompressionStep step;
};

// One step of the aeolian driver: left, then down, then aeolian.
std::optional<DriverStep> driver_step(const VertexSet& s, const SeenSets* seen,
                                      StepKind* only_kind = nullptr) {
  const Count before = boundary_size(s);
  if (!only_kind || *only_kind == StepKind::LeftTreeswap) {
    if (auto p = find_swappable(s)) {
      VertexSet next = treeswap(s, p->u, p->v);
      const Count after = boundary_size(next);
      return DriverStep{std::move(next),
                        {StepKind::LeftTreeswap, p->u, p->v, 0, before, after}};
    }
    if (only_kind) return std::nullopt;
  }
  BoundaryState state;
  state.build(s);
  if (!only_kind || *only_kind == StepKind::DownExchange) {
    if (auto p = find_down_swappable_impl(s, state)) {
      VertexSet next = s;
      next.erase(p->u);
      next.insert(p->v);
      const Count after = boundary_size(next);
      return DriverStep{std::move(next),
                        {StepKind::DownExchange, p->u, p->v, 0, before, after}};
    }
    if (only_kind) return std::nullopt;
  }
  if (!only_kind) {
    if (auto mv = find_aeolian_move(s, state, seen)) {
      return DriverStep{std::move(mv->result),
                        {StepKind::AeolianMove, mv->u, mv->v, mv->moved, before,
                         mv->boundary_after}};
    }
  }
  return std::nullopt;
}

FixResult run_fix(const VertexSet& s, const FixOptions& opt,
                  std::optional<StepKind> only_kind, bool guard_revisits) {
  const Count cap = resolve_step_cap(s, opt);
  FixResult out{s, {s, s, {}, Termination::Fixpoint}};
  SeenSets seen;
  if (guard_revisits) seen.insert(out.set);
  Count steps = 0;
  for (;;) {
    auto st = driver_step(out.set, guard_revisits ? &seen : nullptr,
                          only_kind ? &*only_kind : nullptr);
    if (!st) break;
    if (st->step.boundary_after > st->step.boundary_before)
      throw std::logic_error("compression step increased the border");
    out.set = std::move(st->next);
    out.trace.steps.push_back(st->step);
    if (guard_revisits) seen.insert(out.set);
    if (++steps >= cap) {
      // Cap reached; report a fixpoint anyway if nothing more applies.
      if (driver_step(out.set, guard_revisits ? &seen : nullptr,
                      only_kind ? &*only_kind : nullptr))
        out.trace.terminated = Termination::StepCap;
      break;
    }
  }
  out.trace.result = out.set;
  return out;
}

// Left steps then down steps until neither applies.
FixResult run_left_down(const VertexSet& s, const FixOptions& opt) {
  const Count cap = resolve_step_cap(s, opt);
  FixResult out{s, {s, s, {}, Termination::Fixpoint}};
  Count steps = 0;
  for (;;) {
    std::optional<DriverStep> st;
    StepKind k = StepKind::LeftTreeswap;
    st = driver_step(out.set, nullptr, &k);
    if (!st) {
      k = StepKind::DownExchange;
      st = driver_step(out.set, nullptr, &k);
    }
    if (!st) break;
    if (st->step.boundary_after > st->step.boundary_before)
      throw std::logic_error("compression step increased the border");
    out.set = std::move(st->next);
    out.trace.steps.push_back(st->step);
    if (++steps >= cap) {
      StepKind left = StepKind::LeftTreeswap;
      StepKind down = StepKind::DownExchange;
      if (driver_step(out.set, nullptr, &left) ||
          driver_step(out.set, nullptr, &down))
        out.trace.terminated = Termination::StepCap;
      break;
    }
  }
  out.trace.result = out.set;
  return out;
}

}  // namespace

const char* to_string(StepKind k) {
  switch (k) {
    case StepKind::LeftTreeswap:
      return "left-treeswap";
    case StepKind::DownExchange:
      return "down-exchange";
    case StepKind::AeolianMove:
      return "aeolian-move";
  }
  return "?";
}

std::string CompressionTrace::to_json_lines() const {
  std::ostringstream os;
  for (const auto& st : steps) {
    os << "{\"kind\":\"" << to_string(st.kind) << "\",\"u\":" << st.u
       << ",\"v\":" << st.v << ",\"moved\":" << st.moved
       << ",\"boundary_before\":" << st.boundary_before
       << ",\"boundary_after\":" << st.boundary_after << "}\n";
  }
  return os.str();
}

std::optional<SwappablePair> find_swappable(const VertexSet& s) {
  SwappablePair p;
  if (is_left_ordered(s, &p)) return std::nullopt;
  return p;
}

VertexSet treeswap(const VertexSet& s, VertexId u, VertexId v) {
  const TreeShape& shape = s.shape();
  if (!shape.valid(u) || !shape.valid(v))
    throw std::out_of_range("treeswap: bad vertex");
  if (shape.level_of(u) != shape.level_of(v))
    throw std::invalid_argument("treeswap: vertices on different levels");
  if (u >= v) throw std::invalid_argument("treeswap: u must be left of v");
  VertexSet out = s;
  const int lu = shape.level_of(u);
  for (int rel = 0; lu + rel <= shape.depth(); ++rel) {
    const Count bu = shape.descendant_row_begin(u, rel);
    const Count bv = shape.descendant_row_begin(v, rel);
    for (Count k = 0; k < shape.descendant_row_size(rel); ++k) {
      const bool mu = out.contains(bu + k);
      const bool mv = out.contains(bv + k);
      if (mu == mv) continue;
      if (mu) {
        out.erase(bu + k);
        out.insert(bv + k);
      } else {
        out.insert(bu + k);
        out.erase(bv + k);
      }
    }
  }
  return out;
}

FixResult left_fix(const VertexSet& s, const FixOptions& opt) {
  return run_fix(s, opt, StepKind::LeftTreeswap, false);
}

std::optional<SwappablePair> find_down_swappable(const VertexSet& s) {
  BoundaryState state;
  state.build(s);
  return find_down_swappable_impl(s, state);
}

FixResult down_fix(const VertexSet& s, const FixOptions& opt) {
  return run_fix(s, opt, StepKind::DownExchange, false);
}

FixResult left_down_fix(const VertexSet& s, const FixOptions& opt) {
  return run_left_down(s, opt);
}

std::optional<std::pair<VertexSet, CompressionStep>> aeolian_step(
    const VertexSet& s) {
  auto st = driver_step(s, nullptr);
  if (!st) return std::nullopt;
  return std::make_pair(std::move(st->next), st->step);
}

FixResult aeolian_fix(const VertexSet& s, const FixOptions& opt) {
  return run_fix(s, opt, std::nullopt, true);
}

TrichotomyResult check_trichotomy(const VertexSet& s) {
  const TreeShape& shape = s.shape();
  const int q = shape.branching();
  for (VertexId u : s.members()) {
    if (shape.is_leaf(u)) continue;
    VertexId out[2];
    int missing = 0;
    const Count first = shape.first_child(u);
    for (int j = 0; j < q; ++j) {
      if (!s.contains(first + j)) {
        if (missing < 2) out[missing] = first + j;
        ++missing;
      }
    }
    if (missing == 0) continue;  // case 1
    if (missing == 1) {
      // case 2: the absent child must itself have a child outside S
      const VertexId v = out[0];
      bool child_out = false;
      if (!shape.is_leaf(v)) {
        const Count cf = shape.first_child(v);
        for (int j = 0; j < q; ++j)
          if (!s.contains(cf + j)) {
            child_out = true;
            break;
          }
      }
      if (child_out) continue;
      return {false, u};
    }
    if (missing == 2) {
      // case 3: left absent child split, right absent child empty below
      const VertexId v1 = out[0];
      const VertexId v2 = out[1];
      bool v1_in = false, v1_out = false, v2_in = false;
      if (!shape.is_leaf(v1)) {
        const Count cf = shape.first_child(v1);
        for (int j = 0; j < q; ++j)
          (s.contains(cf + j) ? v1_in : v1_out) = true;
      }
      if (!shape.is_leaf(v2)) {
        const Count cf = shape.first_child(v2);
        for (int j = 0; j < q; ++j)
          if (s.contains(cf + j)) v2_in = true;
      }
      if (v1_in && v1_out && !v2_in) continue;
      return {false, u};
    }
    return {false, u};
  }
  return {};
}

PeakOrderResult check_peak_order(const VertexSet& s) {
  const TreeShape& shape = s.shape();
  const Count n = shape.size();
  std::vector<Count> sub(n, 0);
  for (VertexId v = n - 1; v >= 0; --v) {
    if (s.contains(v)) ++sub[v];
    if (v != 0) sub[(v - 1) / shape.branching()] += sub[v];
  }
  for (int level = 0; level <= shape.depth(); ++level) {
    const Count full = shape.subtree_size(level);
    VertexId bad_u = -1;
    for (VertexId v = shape.level_begin(level); v < shape.level_end(level);
         ++v) {
      if (sub[v] == 0) continue;
      if (bad_u >= 0) return {false, bad_u, v};
      const bool filled =
          sub[v] == full || (sub[v] == full - 1 && !s.contains(v));
      if (!filled) bad_u = v;
    }
  }
  return {};
}

bool subtree_levels_contiguous(const VertexSet& s, VertexId* counterexample) {
  const TreeShape& shape = s.shape();
  const Count n = shape.size();
  const int d = shape.depth();
  std::vector<std::uint64_t> mask(n, 0);
  for (VertexId v = n - 1; v >= 0; --v) {
    if (s.contains(v)) mask[v] |= 1ULL << shape.level_of(v);
    if (v != 0) mask[(v - 1) / shape.branching()] |= mask[v];
  }
  for (VertexId v = 0; v < n; ++v) {
    const std::uint64_t m = mask[v];
    if (!m) continue;
    const int low = std::countr_zero(m);
    const std::uint64_t want = ((1ULL << (d - low + 1)) - 1) << low;
    if (m != want) {
      if (counterexample) *counterexample = v;
      return false;
    }
  }
  return true;
}

}  // namespace treeperim

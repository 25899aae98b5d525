#include "treeperim/oracle.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace treeperim {
namespace {

constexpr Count kInf = std::numeric_limits<Count>::max() / 4;

Count border_of_mask(const std::vector<std::uint64_t>& adj, Count n,
                     std::uint64_t mask) {
  Count b = 0;
  for (VertexId v = 0; v < n; ++v)
    if (!((mask >> v) & 1) && (adj[v] & mask)) ++b;
  return b;
}

std::vector<std::uint64_t> adjacency_masks(const TreeShape& shape) {
  const Count n = shape.size();
  std::vector<std::uint64_t> adj(n, 0);
  for (VertexId v = 1; v < n; ++v) {
    const VertexId p = (v - 1) / shape.branching();
    adj[v] |= 1ULL << p;
    adj[p] |= 1ULL << v;
  }
  return adj;
}

// Calls fn(mask) for every n-bit mask with exactly s bits set.
template <typename Fn>
void for_each_combination(Count n, Count s, Fn&& fn) {
  if (s == 0) {
    fn(0ULL);
    return;
  }
  std::uint64_t mask = (s >= 64) ? ~0ULL : ((1ULL << s) - 1);
  const std::uint64_t top = 1ULL << n;
  while (mask < top) {
    fn(mask);
    // Gosper's hack: next mask with the same popcount.
    const std::uint64_t c = mask & -mask;
    const std::uint64_t r = mask + c;
    if (r >= top || r == 0) break;
    mask = (((r ^ mask) >> 2) / c) | r;
  }
}

}  // namespace

Count phi_bruteforce(const TreeShape& shape, Count s, Count size_cap) {
  const Count n = shape.size();
  if (n > size_cap)
    throw std::invalid_argument("phi_bruteforce: shape exceeds size cap");
  if (s < 0 || s > n)
    throw std::out_of_range("phi_bruteforce: cardinality out of range");
  const auto adj = adjacency_masks(shape);
  Count best = kInf;
  for_each_combination(n, s, [&](std::uint64_t mask) {
    best = std::min(best, border_of_mask(adj, n, mask));
  });
  return best;
}

ProfileOracle::ProfileOracle(const TreeShape& shape, Count size_budget)
    : shape_(shape) {
  if (shape_.size() > size_budget)
    throw std::invalid_argument("ProfileOracle: shape exceeds the size budget");
  const int q = shape_.branching();
  const int d = shape_.depth();
  tables_.resize(d + 1);

  // Leaf subtree.
  {
    auto& t = tables_[0];
    for (auto& c : t.cost) c.assign(2, kInf);
    t.cost[kMember][1] = 0;
    t.cost[kClean][0] = 0;
  }

  for (int k = 1; k <= d; ++k) {
    const auto& child = tables_[k - 1].cost;
    const Count mc = static_cast<Count>(child[0].size()) - 1;  // child size
    const Count mk = q * mc + 1;
    auto& t = tables_[k];

    // Cheapest child contribution when the parent is a member (clean child
    // gets charged: it becomes border through the parent), and when the
    // parent is outside S, split by whether the child is a member.
    std::vector<Count> under_member(mc + 1, kInf), out_nonmember(mc + 1, kInf);
    for (Count s = 0; s <= mc; ++s) {
      under_member[s] = std::min(
          {child[kMember][s], child[kBorder][s],
           child[kClean][s] >= kInf ? kInf : child[kClean][s] + 1});
      out_nonmember[s] = std::min(child[kBorder][s], child[kClean][s]);
    }

    t.member_partial.assign(q + 1, {});
    t.out_partial.assign(q + 1, {});
    t.member_partial[0].assign(1, 0);
    t.out_partial[0][0].assign(1, 0);
    t.out_partial[0][1].assign(1, kInf);
    for (int j = 1; j <= q; ++j) {
      const Count cap = j * mc;
      auto& gm = t.member_partial[j];
      gm.assign(cap + 1, kInf);
      const auto& pm = t.member_partial[j - 1];
      for (Count pre = 0; pre < static_cast<Count>(pm.size()); ++pre) {
        if (pm[pre] >= kInf) continue;
        for (Count sc = 0; sc <= mc; ++sc) {
          if (under_member[sc] >= kInf) continue;
          gm[pre + sc] = std::min(gm[pre + sc], pm[pre] + under_member[sc]);
        }
      }
      auto& go = t.out_partial[j];
      go[0].assign(cap + 1, kInf);
      go[1].assign(cap + 1, kInf);
      const auto& po = t.out_partial[j - 1];
      for (int f = 0; f < 2; ++f) {
        for (Count pre = 0; pre < static_cast<Count>(po[f].size()); ++pre) {
          if (po[f][pre] >= kInf) continue;
          for (Count sc = 0; sc <= mc; ++sc) {
            if (out_nonmember[sc] < kInf)
              go[f][pre + sc] =
                  std::min(go[f][pre + sc], po[f][pre] + out_nonmember[sc]);
            if (child[kMember][sc] < kInf)
              go[1][pre + sc] =
                  std::min(go[1][pre + sc], po[f][pre] + child[kMember][sc]);
          }
        }
      }
    }

    for (auto& c : t.cost) c.assign(mk + 1, kInf);
    for (Count s = 1; s <= mk; ++s)
      t.cost[kMember][s] = t.member_partial[q][s - 1];
    for (Count s = 0; s < mk; ++s) {
      if (t.out_partial[q][1][s] < kInf)
        t.cost[kBorder][s] = t.out_partial[q][1][s] + 1;
      t.cost[kClean][s] = t.out_partial[q][0][s];
    }
  }

  const Count n = shape_.size();
  values_.assign(n + 1, kInf);
  const auto& root = tables_[d].cost;
  for (Count s = 0; s <= n; ++s)
    values_[s] =
        std::min({root[kMember][s], root[kBorder][s], root[kClean][s]});
}

Count ProfileOracle::phi(Count s) const {
  if (s < 0 || s > shape_.size())
    throw std::out_of_range("ProfileOracle::phi: cardinality out of range");
  return values_[s];
}

void ProfileOracle::expand(VertexId v, int depth, int state, Count s,
                           VertexSet& out) const {
  const int q = shape_.branching();
  if (state == kClean && s == 0) return;
  if (depth == 0) {
    if (state == kMember) out.insert(v);
    return;
  }
  const auto& t = tables_[depth];
  const auto& child = tables_[depth - 1].cost;
  const Count mc = static_cast<Count>(child[0].size()) - 1;
  if (state == kMember && s == static_cast<Count>(t.cost[0].size()) - 1) {
    // Full subtree: insert every descendant row directly.
    for (int rel = 0; rel + (shape_.depth() - depth) <= shape_.depth(); ++rel) {
      const Count begin = shape_.descendant_row_begin(v, rel);
      for (Count k = 0; k < shape_.descendant_row_size(rel); ++k)
        out.insert(begin + k);
    }
    return;
  }

  if (state == kMember) {
    out.insert(v);
    Count rem = s - 1;
    Count target = t.member_partial[q][rem];
    for (int j = q; j >= 1; --j) {
      const auto& prev = t.member_partial[j - 1];
      bool found = false;
      for (Count sc = 0; sc <= std::min(mc, rem) && !found; ++sc) {
        const Count pre = rem - sc;
        if (pre >= static_cast<Count>(prev.size()) || prev[pre] >= kInf)
          continue;
        for (int cs : {kMember, kBorder, kClean}) {
          const Count cc =
              child[cs][sc] >= kInf
                  ? kInf
                  : child[cs][sc] + (cs == kClean ? 1 : 0);
          if (cc < kInf && prev[pre] + cc == target) {
            expand(shape_.child(v, j - 1), depth - 1, cs, sc, out);
            rem = pre;
            target = prev[pre];
            found = true;
            break;
          }
        }
      }
      if (!found)
        throw std::logic_error("ProfileOracle: witness backtrack failed");
    }
    return;
  }

  // Parent outside S: walk the flagged partials. A child outside S keeps
  // the flag, a member child lands on flag 1 from either side.
  int flag = state == kBorder ? 1 : 0;
  Count rem = s;
  Count target = t.out_partial[q][flag][rem];
  for (int j = q; j >= 1; --j) {
    const auto& prev = t.out_partial[j - 1];
    bool found = false;
    for (Count sc = 0; sc <= std::min(mc, rem) && !found; ++sc) {
      const Count pre = rem - sc;
      if (pre >= static_cast<Count>(prev[0].size())) continue;
      struct Choice {
        int child_state;
        int prev_flag;
      };
      Choice choices[4];
      int nc = 0;
      choices[nc++] = {kBorder, flag};
      choices[nc++] = {kClean, flag};
      if (flag == 1) {
        choices[nc++] = {kMember, 0};
        choices[nc++] = {kMember, 1};
      }
      for (int ci = 0; ci < nc; ++ci) {
        const auto [cs, pf] = choices[ci];
        const Count cc = child[cs][sc];
        if (cc >= kInf || prev[pf][pre] >= kInf) continue;
        if (prev[pf][pre] + cc == target) {
          expand(shape_.child(v, j - 1), depth - 1, cs, sc, out);
          rem = pre;
          flag = pf;
          target = prev[pf][pre];
          found = true;
          break;
        }
      }
    }
    if (!found)
      throw std::logic_error("ProfileOracle: witness backtrack failed");
  }
}

VertexSet ProfileOracle::witness(Count s) const {
  if (s < 0 || s > shape_.size())
    throw std::out_of_range("ProfileOracle::witness: cardinality out of range");
  const auto& root = tables_[shape_.depth()].cost;
  int state = kMember;
  Count best = root[kMember][s];
  if (root[kBorder][s] < best) {
    best = root[kBorder][s];
    state = kBorder;
  }
  if (root[kClean][s] < best) {
    best = root[kClean][s];
    state = kClean;
  }
  VertexSet out(shape_);
  expand(0, shape_.depth(), state, s, out);
  if (out.cardinality() != s)
    throw std::logic_error("ProfileOracle: witness has wrong cardinality");
  return out;
}

ProfileTable phi_profile_dp(const TreeShape& shape, bool want_witnesses) {
  ProfileOracle oracle(shape);
  ProfileTable table{shape, oracle.values(), std::nullopt};
  if (want_witnesses) {
    std::vector<VertexSet> ws;
    ws.reserve(shape.size() + 1);
    for (Count s = 0; s <= shape.size(); ++s) ws.push_back(oracle.witness(s));
    table.witnesses = std::move(ws);
  }
  return table;
}

PeakReport phi_peak(const TreeShape& shape) {
  ProfileOracle oracle(shape);
  Count peak = 0;
  for (Count v : oracle.values()) peak = std::max(peak, v);
  std::vector<Count> argmax;
  for (Count s = 0; s <= shape.size(); ++s)
    if (oracle.values()[s] == peak) argmax.push_back(s);
  return {shape, peak, std::move(argmax)};
}

TotalReport phi_total(const TreeShape& shape) {
  ProfileOracle oracle(shape);
  Count sum = 0;
  double norm = 0.0;
  for (Count s = 0; s <= shape.size(); ++s) {
    sum += oracle.values()[s];
    if (s >= 1)
      norm += static_cast<double>(oracle.values()[s]) / static_cast<double>(s);
  }
  return {sum, norm};
}

std::vector<VertexSet> enumerate_optima(const TreeShape& shape, Count s,
                                        Count size_cap) {
  const Count n = shape.size();
  if (n > size_cap)
    throw std::invalid_argument("enumerate_optima: shape exceeds size cap");
  if (s < 0 || s > n)
    throw std::out_of_range("enumerate_optima: cardinality out of range");
  const auto adj = adjacency_masks(shape);
  Count best = kInf;
  std::vector<std::uint64_t> masks;
  for_each_combination(n, s, [&](std::uint64_t mask) {
    const Count b = border_of_mask(adj, n, mask);
    if (b < best) {
      best = b;
      masks.clear();
    }
    if (b == best) masks.push_back(mask);
  });
  std::vector<VertexSet> out;
  out.reserve(masks.size());
  for (std::uint64_t mask : masks) {
    VertexSet vs(shape);
    for (VertexId v = 0; v < n; ++v)
      if ((mask >> v) & 1) vs.insert(v);
    out.push_back(std::move(vs));
  }
  return out;
}

NestingReport nesting_report(const TreeShape& shape, Count size_cap) {
  const Count n = shape.size();
  if (n > size_cap)
    throw std::invalid_argument("nesting_report: shape exceeds size cap");
  const auto adj = adjacency_masks(shape);
  auto optima_masks = [&](Count s) {
    Count best = kInf;
    std::vector<std::uint64_t> masks;
    for_each_combination(n, s, [&](std::uint64_t mask) {
      const Count b = border_of_mask(adj, n, mask);
      if (b < best) {
        best = b;
        masks.clear();
      }
      if (b == best) masks.push_back(mask);
    });
    return masks;
  };

  NestingReport report{shape, std::vector<bool>(n, false), false};
  auto prev = optima_masks(0);
  std::vector<char> reachable(prev.size(), 1);
  bool chain_alive = true;
  for (Count s = 0; s < n; ++s) {
    auto next = optima_masks(s + 1);
    bool any = false;
    std::vector<char> next_reach(next.size(), 0);
    for (std::size_t i = 0; i < prev.size(); ++i) {
      for (std::size_t j = 0; j < next.size(); ++j) {
        if ((prev[i] & ~next[j]) == 0) {
          any = true;
          if (chain_alive && reachable[i]) next_reach[j] = 1;
        }
      }
    }
    report.step_nested[s] = any;
    chain_alive =
        chain_alive && std::any_of(next_reach.begin(), next_reach.end(),
                                   [](char c) { return c != 0; });
    prev = std::move(next);
    reachable = std::move(next_reach);
  }
  report.full_chain = chain_alive;
  return report;
}

}  // namespace treeperim

#include "treeperim/witness.hpp"

#include <algorithm>
#include <stdexcept>

#include <json.hpp>

#include "treeperim/bounds.hpp"

namespace treeperim {

const char* to_string(Regime r) {
  switch (r) {
    case Regime::QAtLeast5:
      return "q>=5";
    case Regime::Q3or4:
      return "q in {3,4}";
    case Regime::Q2:
      return "q=2";
  }
  return "?";
}

CriticalSizes critical_size(int q, int d) {
  if (q < 2) throw std::invalid_argument("critical_size: q must be >= 2");
  if (d < 1) throw std::invalid_argument("critical_size: d must be >= 1");
  TreeShape shape(q, d);
  if (q >= 5) {
    Count size = 0;
    for (int i = 1; i <= d; ++i) size += 2 * shape.subtree_size(i);
    return {q, d, size, Regime::QAtLeast5, std::nullopt};
  }
  if (q >= 3) {
    const Count dd = d - ceil_log_int(q, 2LL * d);
    if (dd < 1)
      throw std::invalid_argument("critical_size: depth too small for q<=4");
    Count size = 0;
    for (int i = 1; i <= dd; ++i) size += shape.subtree_size(i) - 1;
    return {q, d, size, Regime::Q3or4, static_cast<int>(dd)};
  }
  const Count a = d - ceil_log_int(2, 3LL * d);
  const Count dd = a >= 0 ? a / 2 : -((-a + 1) / 2);
  if (dd < 1)
    throw std::invalid_argument("critical_size: depth too small for q=2");
  Count size = 0;
  for (int i = 1; i <= dd; ++i) size += shape.subtree_size(2 * i) - 1;
  return {q, d, size, Regime::Q2, static_cast<int>(dd)};
}

VertexSet postorder_prefix(const TreeShape& shape, Count s) {
  if (s < 0 || s > shape.size())
    throw std::out_of_range("postorder_prefix: cardinality out of range");
  VertexSet out(shape);
  if (s == 0) return out;
  Count taken = 0;
  std::vector<std::pair<VertexId, int>> stack;  // vertex, next child index
  stack.emplace_back(0, 0);
  while (!stack.empty() && taken < s) {
    auto& [v, j] = stack.back();
    if (shape.is_leaf(v) || j == shape.branching()) {
      out.insert(v);
      ++taken;
      stack.pop_back();
      continue;
    }
    const VertexId c = shape.child(v, j);
    ++j;
    stack.emplace_back(c, 0);
  }
  return out;
}

namespace {

void insert_subtree(VertexSet& s, VertexId v, bool skip_root) {
  const TreeShape& shape = s.shape();
  const int lv = shape.level_of(v);
  for (int rel = 0; lv + rel <= shape.depth(); ++rel) {
    const Count begin = shape.descendant_row_begin(v, rel);
    for (Count k = 0; k < shape.descendant_row_size(rel); ++k) {
      if (skip_root && rel == 0 && begin + k == v) continue;
      s.insert(begin + k);
    }
  }
}

bool same_id_set(std::vector<VertexId> a, std::vector<VertexId> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

void check_observations(UpperConstruction& c) {
  c.observations_ok = true;
  c.observation_fail.clear();
  auto fail = [&](const std::string& why) {
    c.observations_ok = false;
    if (!c.observation_fail.empty()) c.observation_fail += "; ";
    c.observation_fail += why;
  };
  if (c.set.cardinality() != c.target) fail("cardinality mismatch");
  // Path vertices are exactly s0 + s1 + s2, disjointly.
  std::vector<VertexId> assigned;
  assigned.insert(assigned.end(), c.s0.begin(), c.s0.end());
  assigned.insert(assigned.end(), c.s1.begin(), c.s1.end());
  assigned.insert(assigned.end(), c.s2.begin(), c.s2.end());
  if (assigned.size() != c.path.size() || !same_id_set(assigned, c.path))
    fail("path is not the disjoint union s0+s1+s2");
  // Border is exactly s1p + s2, disjointly.
  std::vector<VertexId> border_claim;
  border_claim.insert(border_claim.end(), c.s1p.begin(), c.s1p.end());
  border_claim.insert(border_claim.end(), c.s2.begin(), c.s2.end());
  const auto actual = boundary(c.set).members();
  if (border_claim.size() !=
          static_cast<std::size_t>(std::distance(actual.begin(), actual.end())) ||
      !same_id_set(border_claim, actual))
    fail("border is not the disjoint union s1p+s2");
  if (c.s1p.size() != c.s1.size()) fail("|s1p| != |s1|");
}

}  // namespace

UpperConstruction build_extremal_set(const TreeShape& shape, Count s) {
  if (shape.branching() != 3 && shape.branching() != 4)
    throw std::invalid_argument("build_extremal_set: q must be 3 or 4");
  if (s < 1 || s > shape.size())
    throw std::out_of_range("build_extremal_set: cardinality out of range");
  const int q = shape.branching();
  const int d = shape.depth();
  UpperConstruction c{shape,     s,  {}, {}, VertexSet(shape), {}, {}, {},
                      {},        0,  true, "", std::nullopt};

  if (s == shape.size()) {
    // Whole vertex set; the recursion below never needs it and cannot
    // produce it (path vertices stay outside S).
    insert_subtree(c.set, 0, false);
    c.boundary_count = 0;
    check_observations(c);
    return c;
  }

  Count r = s;
  VertexId u_prev = 0;
  c.path.push_back(0);
  for (int round = 1;; ++round) {
    const Count ti = shape.subtree_size(round);
    if (r >= 1 && r <= ti - 2) {
      c.schedule.push_back({round, 1, r, 0});
      c.s0.push_back(u_prev);
      u_prev = shape.child(u_prev, 0);
      c.path.push_back(u_prev);
      continue;
    }
    if (r >= ti - 1 && r <= 2 * ti - 2) {
      c.schedule.push_back({round, 2, r, ti - 1});
      const VertexId top = shape.child(u_prev, 0);
      insert_subtree(c.set, top, true);
      c.s1p.push_back(top);
      c.s1.push_back(u_prev);
      if (r == ti - 1) break;
      r -= ti - 1;
      u_prev = shape.child(u_prev, 1);
      c.path.push_back(u_prev);
      continue;
    }
    if (r == 2 * ti - 1) {
      c.schedule.push_back({round, 3, r, r});
      if (ti == 1) {
        // Leaf round: one vertex left; the second subtree degenerates away.
        c.set.insert(shape.child(u_prev, 0));
        c.s2.push_back(u_prev);
        break;
      }
      insert_subtree(c.set, shape.child(u_prev, 0), false);
      insert_subtree(c.set, shape.child(u_prev, 1), true);
      c.s2.push_back(u_prev);
      const VertexId next = shape.child(u_prev, 1);
      c.s2.push_back(next);
      c.path.push_back(next);
      break;
    }
    // r >= 2 * ti
    const Count si = r / ti;
    if (si > q)
      throw std::logic_error("build_extremal_set: fill count exceeds arity");
    c.schedule.push_back({round, 4, r, si * ti});
    for (Count j = 0; j < si; ++j)
      insert_subtree(c.set, shape.child(u_prev, static_cast<int>(j)), false);
    c.s2.push_back(u_prev);
    r -= si * ti;
    if (r == 0) break;
    if (si == q)
      throw std::logic_error("build_extremal_set: no child left to descend");
    u_prev = shape.child(u_prev, static_cast<int>(si));
    c.path.push_back(u_prev);
  }

  c.boundary_count = boundary_size(c.set);
  check_observations(c);

  // Adjusted variant: strip the deepest reached subtree at the level
  // d - (alpha + 1), alpha = floor(log_q d) - 2, then refill from s1p and s2.
  const Count alpha = floor_log_int(q, d) - 2;
  const Count strip_level = d - (alpha + 1);
  if (strip_level >= 0 && strip_level <= d) {
    // Extend the path with the right-most child whose subtree meets S.
    std::vector<Count> sub(shape.size(), 0);
    for (VertexId v = shape.size() - 1; v >= 0; --v) {
      if (c.set.contains(v)) ++sub[v];
      if (v != 0) sub[(v - 1) / q] += sub[v];
    }
    VertexId u = c.path.back();
    int level = static_cast<int>(c.path.size()) - 1;
    if (strip_level < level) {
      u = c.path[static_cast<std::size_t>(strip_level)];
    } else {
      while (level < strip_level) {
        VertexId next = shape.child(u, 0);
        for (int j = q - 1; j >= 0; --j) {
          if (sub[shape.child(u, j)] > 0) {
            next = shape.child(u, j);
            break;
          }
        }
        u = next;
        ++level;
      }
    }
    UpperConstruction::Adjustment adj{u, 0, {}, c.set, 0};
    for (VertexId w : shape.descendants(u)) {
      if (adj.set.contains(w)) {
        adj.set.erase(w);
        ++adj.removed;
      }
    }
    std::vector<VertexId> pool;
    for (VertexId w : c.s1p)
      if (!shape.is_descendant(w, u)) pool.push_back(w);
    for (VertexId w : c.s2)
      if (!shape.is_descendant(w, u)) pool.push_back(w);
    if (static_cast<Count>(pool.size()) >= adj.removed) {
      for (Count i = 0; i < adj.removed; ++i) {
        adj.set.insert(pool[static_cast<std::size_t>(i)]);
        adj.refill.push_back(pool[static_cast<std::size_t>(i)]);
      }
      adj.boundary_count = boundary_size(adj.set);
      c.adjusted = std::move(adj);
    }
  }
  return c;
}

std::string UpperConstruction::to_json() const {
  nlohmann::json j;
  j["q"] = shape.branching();
  j["d"] = shape.depth();
  j["s"] = target;
  j["path"] = path;
  nlohmann::json sched = nlohmann::json::array();
  for (const auto& st : schedule)
    sched.push_back({{"round", st.round},
                     {"case", st.case_id},
                     {"r", st.r_before},
                     {"placed", st.placed}});
  j["case_schedule"] = sched;
  j["S"] = set.members();
  j["S0"] = s0;
  j["S1"] = s1;
  j["S1p"] = s1p;
  j["S2"] = s2;
  j["boundary"] = boundary_count;
  j["observations_ok"] = observations_ok;
  if (adjusted) {
    j["Sbar"] = adjusted->set.members();
    j["Sbar_strip_vertex"] = adjusted->strip_vertex;
    j["Sbar_refill"] = adjusted->refill;
    j["Sbar_boundary"] = adjusted->boundary_count;
  } else {
    j["Sbar"] = nullptr;
  }
  return j.dump();
}

UpperBoundSweep upper_bound_sweep(const TreeShape& shape) {
  const int q = shape.branching();
  const int d = shape.depth();
  UpperBoundSweep sweep{shape,
                        d - floor_log_int(q, d) + 2,
                        0,
                        {},
                        true,
                        true,
                        ""};
  for (Count s = 1; s < shape.size(); ++s) {
    const auto c = build_extremal_set(shape, s);
    Count best = c.boundary_count;
    if (c.adjusted) best = std::min(best, c.adjusted->boundary_count);
    sweep.max_boundary = std::max(sweep.max_boundary, best);
    if (best > sweep.bound) {
      sweep.all_within_bound = false;
      sweep.failing_s.push_back(s);
    }
    if (!c.observations_ok && sweep.observations_ok) {
      sweep.observations_ok = false;
      sweep.observation_fail =
          "s=" + std::to_string(s) + ": " + c.observation_fail;
    }
  }
  return sweep;
}

int upper_bound_threshold(int q, int d_lo, int d_hi) {
  int threshold = d_hi + 1;
  for (int d = d_hi; d >= d_lo; --d) {
    const auto sweep = upper_bound_sweep(TreeShape(q, d));
    if (!sweep.all_within_bound) break;
    threshold = d;
  }
  return threshold;
}

LocalStructureReport local_structure_report(int dsub, Count s) {
  TreeShape shape(3, dsub);
  if (s < 0 || s + 1 > shape.size())
    throw std::out_of_range("local_structure_report: cardinality out of range");
  ProfileOracle oracle(shape);
  VertexSet ws = oracle.witness(s);
  VertexSet ws1 = oracle.witness(s + 1);
  const bool contained = ws.is_subset_of(ws1);
  return {shape,         s,
          std::move(ws), std::move(ws1),
          oracle.phi(s), oracle.phi(s + 1),
          contained};
}

std::string LocalStructureReport::to_json() const {
  nlohmann::json j;
  j["q"] = shape.branching();
  j["dsub"] = shape.depth();
  j["s"] = s;
  j["phi_s"] = phi_s;
  j["phi_s_plus_1"] = phi_s1;
  j["witness_s"] = witness_s.members();
  j["witness_s_plus_1"] = witness_s1.members();
  j["border_s"] = boundary(witness_s).members();
  j["border_s_plus_1"] = boundary(witness_s1).members();
  j["witness_contained"] = witness_contained;
  return j.dump();
}

PostorderRate postorder_equality_rate(const TreeShape& shape,
                                      const ProfileOracle& oracle) {
  PostorderRate rate{shape, 0, shape.size() + 1, true};
  for (Count s = 0; s <= shape.size(); ++s) {
    const Count b = boundary_size(postorder_prefix(shape, s));
    if (b == oracle.phi(s)) ++rate.equal_count;
    if (b < oracle.phi(s)) rate.never_below = false;
  }
  return rate;
}

}  // namespace treeperim

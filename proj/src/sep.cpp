#include "treeperim/sep.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>

#include "treeperim/bounds.hpp"
#include "treeperim/oracle.hpp"

namespace treeperim {
namespace {

std::vector<std::vector<VertexId>> adjacency(const RootedTree& tree) {
  std::vector<std::vector<VertexId>> adj(tree.size());
  for (VertexId v = 0; v < tree.size(); ++v) {
    if (v != tree.root()) {
      adj[v].push_back(tree.parent(v));
      adj[tree.parent(v)].push_back(v);
    }
  }
  return adj;
}

}  // namespace

std::string Layout::to_json() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (i) os << ",";
    os << order[i];
  }
  os << "]";
  return os.str();
}

Layout Layout::random(Count n, Rng& rng) {
  Layout l;
  l.order.resize(static_cast<std::size_t>(n));
  for (Count i = 0; i < n; ++i) l.order[static_cast<std::size_t>(i)] = i;
  for (Count i = n - 1; i > 0; --i) {
    const Count j =
        static_cast<Count>(rng.below(static_cast<std::uint64_t>(i + 1)));
    std::swap(l.order[static_cast<std::size_t>(i)],
              l.order[static_cast<std::size_t>(j)]);
  }
  return l;
}

Count vs_of_layout(const RootedTree& tree, const Layout& layout) {
  const Count n = tree.size();
  if (static_cast<Count>(layout.order.size()) != n)
    throw std::invalid_argument("vs_of_layout: layout size mismatch");
  std::vector<char> placed(n, 0);
  for (VertexId v : layout.order) {
    if (v < 0 || v >= n || placed[v])
      throw std::invalid_argument("vs_of_layout: layout is not a bijection");
    placed[v] = 1;
  }
  std::fill(placed.begin(), placed.end(), 0);
  const auto adj = adjacency(tree);
  std::vector<char> border(n, 0);
  Count current = 0;
  Count best = 0;
  for (VertexId v : layout.order) {
    placed[v] = 1;
    if (border[v]) {
      border[v] = 0;
      --current;
    }
    for (VertexId w : adj[v])
      if (!placed[w] && !border[w]) {
        border[w] = 1;
        ++current;
      }
    best = std::max(best, current);
  }
  return best;
}

Count vs_exact(const RootedTree& tree) {
  const Count n = tree.size();
  if (n > 20) throw std::invalid_argument("vs_exact: n exceeds 20");
  std::vector<std::uint32_t> nbr(n, 0);
  for (VertexId v = 0; v < n; ++v)
    if (v != tree.root()) {
      nbr[v] |= 1u << tree.parent(v);
      nbr[tree.parent(v)] |= 1u << v;
    }
  const std::uint32_t full = n == 32 ? ~0u : (1u << n) - 1;
  std::vector<std::uint8_t> f(static_cast<std::size_t>(full) + 1, 0);
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    Count border = 0;
    for (VertexId v = 0; v < n; ++v)
      if (!((mask >> v) & 1) && (nbr[v] & mask)) ++border;
    Count best_prev = n;
    std::uint32_t rest = mask;
    while (rest) {
      const int v = std::countr_zero(rest);
      rest &= rest - 1;
      best_prev = std::min<Count>(best_prev, f[mask ^ (1u << v)]);
    }
    f[mask] = static_cast<std::uint8_t>(std::max(border, best_prev));
  }
  return f[full];
}

namespace {

// Summary of a rooted subtree for the pathwidth recursion; see sep.hpp.
struct VsSummary {
  std::vector<int> ks;  // strictly decreasing stage values, ks[0] = vs
  bool open = true;     // terminal stage Open (else Through)
  int beta = 0;         // valid when open

  int vs() const { return ks[0]; }
  bool enterable() const { return ks.size() == 1 && open; }
  // Smallest level at which a parent path may descend into this subtree.
  int enter_level() const { return enterable() ? beta : ks[0] + 1; }
  VsSummary tail() const {
    VsSummary t;
    t.ks.assign(ks.begin() + 1, ks.end());
    t.open = open;
    t.beta = beta;
    return t;
  }
};

// Does a tree whose root has children with these summaries have vs <= k?
// Rests on the path characterization: yes iff some path leaves only
// components of vs <= k-1 hanging. The path either runs through the root
// (descending into at most two children, each needing a root path at level
// k) or lies inside a single child with the root hanging above it.
bool vs_feasible(const std::vector<VsSummary>& cs, int k) {
  if (k < 0) return false;
  if (k == 0) return cs.empty();
  std::vector<std::size_t> heavies;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (cs[i].vs() > k) return false;
    if (cs[i].vs() == k) heavies.push_back(i);
  }
  if (heavies.empty()) return true;
  if (heavies.size() > 2) return false;
  if (heavies.size() == 2)
    return cs[heavies[0]].enter_level() <= k &&
           cs[heavies[1]].enter_level() <= k;
  const auto& j = cs[heavies[0]];
  if (j.enter_level() <= k) return true;
  // Path inside the heavy child, root hanging above it: the root plus the
  // other children plus the child's residue must fit one level lower.
  std::vector<VsSummary> rest;
  rest.reserve(cs.size());
  for (std::size_t i = 0; i < cs.size(); ++i)
    if (i != heavies[0]) rest.push_back(cs[i]);
  if (j.ks.size() >= 2) {
    rest.push_back(j.tail());
    return vs_feasible(rest, k - 1);
  }
  if (!j.open) return vs_feasible(rest, k - 1);  // Through
  return false;
}

VsSummary vs_combine(const std::vector<VsSummary>& cs) {
  if (cs.empty()) return {{0}, true, 0};
  int kmax = 0;
  for (const auto& c : cs) kmax = std::max(kmax, c.vs());
  const int vs = vs_feasible(cs, kmax) ? kmax : kmax + 1;

  // beta: the root path descends into at most one child; the others hang.
  int max1 = -1, max2 = -1, max1_count = 0;
  for (const auto& c : cs) {
    if (c.vs() > max1) {
      max2 = max1;
      max1 = c.vs();
      max1_count = 1;
    } else if (c.vs() == max1) {
      ++max1_count;
      max2 = max1;
    } else {
      max2 = std::max(max2, c.vs());
    }
  }
  int beta = vs + 1;
  for (const auto& c : cs) {
    const int others = (c.vs() == max1 && max1_count == 1) ? max2 : max1;
    beta = std::min(beta, std::max(c.enter_level(), others + 1));
  }

  if (beta <= vs) return {{vs}, true, std::max(beta, 0)};

  // vs == kmax here: a jump to kmax+1 always leaves beta <= vs.
  std::vector<const VsSummary*> heavies;
  for (const auto& c : cs)
    if (c.vs() == kmax) heavies.push_back(&c);
  if (heavies.size() == 2) return {{vs}, false, 0};

  // Single heavy child, not enterable: chain through its residue.
  const VsSummary* j = heavies.front();
  std::vector<VsSummary> rest;
  for (const auto& c : cs)
    if (&c != j) rest.push_back(c);
  if (j->ks.size() >= 2) rest.push_back(j->tail());
  VsSummary tail = vs_combine(rest);
  VsSummary out;
  out.ks.reserve(tail.ks.size() + 1);
  out.ks.push_back(vs);
  out.ks.insert(out.ks.end(), tail.ks.begin(), tail.ks.end());
  out.open = tail.open;
  out.beta = tail.beta;
  return out;
}

}  // namespace

Count tree_pathwidth(const RootedTree& tree) {
  const Count n = tree.size();
  std::vector<VsSummary> summary(static_cast<std::size_t>(n));
  // Iterative post-order.
  std::vector<std::pair<VertexId, std::size_t>> stack;
  stack.emplace_back(tree.root(), 0);
  while (!stack.empty()) {
    auto& [v, idx] = stack.back();
    if (idx < tree.children(v).size()) {
      const VertexId c = tree.children(v)[idx];
      ++idx;
      stack.emplace_back(c, 0);
      continue;
    }
    std::vector<VsSummary> cs;
    cs.reserve(tree.children(v).size());
    for (VertexId c : tree.children(v))
      cs.push_back(summary[static_cast<std::size_t>(c)]);
    summary[static_cast<std::size_t>(v)] = vs_combine(cs);
    stack.pop_back();
  }
  return summary[static_cast<std::size_t>(tree.root())].vs();
}

namespace {

void binary_half_depth_layout(const TreeShape& shape, VertexId v, int below,
                              std::vector<VertexId>& out) {
  if (below == 0) {
    out.push_back(v);
    return;
  }
  if (below == 1) {
    out.push_back(shape.child(v, 0));
    out.push_back(shape.child(v, 1));
    out.push_back(v);
    return;
  }
  const VertexId c0 = shape.child(v, 0);
  const VertexId c1 = shape.child(v, 1);
  binary_half_depth_layout(shape, shape.child(c0, 0), below - 2, out);
  binary_half_depth_layout(shape, shape.child(c0, 1), below - 2, out);
  out.push_back(c0);
  out.push_back(v);
  binary_half_depth_layout(shape, shape.child(c1, 0), below - 2, out);
  binary_half_depth_layout(shape, shape.child(c1, 1), below - 2, out);
  out.push_back(c1);
}

void postorder_layout(const TreeShape& shape, std::vector<VertexId>& out) {
  std::vector<std::pair<VertexId, int>> stack;
  stack.emplace_back(0, 0);
  while (!stack.empty()) {
    auto& [v, j] = stack.back();
    if (shape.is_leaf(v) || j == shape.branching()) {
      out.push_back(v);
      stack.pop_back();
      continue;
    }
    const VertexId c = shape.child(v, j);
    ++j;
    stack.emplace_back(c, 0);
  }
}

}  // namespace

Layout optimal_layout(const TreeShape& shape) {
  Layout l;
  l.order.reserve(static_cast<std::size_t>(shape.size()));
  if (shape.branching() >= 3) {
    postorder_layout(shape, l.order);
  } else {
    binary_half_depth_layout(shape, 0, shape.depth(), l.order);
  }
  return l;
}

GapReport gap_report(const TreeShape& shape) {
  const Count vs = pathwidth_formula(shape.branching(), shape.depth());
  const Count peak = phi_peak(shape).peak;
  return {shape.branching(), shape.depth(), vs, peak, vs - peak};
}

Count phi_peak_exhaustive(const RootedTree& tree) {
  const Count n = tree.size();
  if (n > 20) throw std::invalid_argument("phi_peak_exhaustive: n exceeds 20");
  std::vector<std::uint32_t> nbr(n, 0);
  for (VertexId v = 0; v < n; ++v)
    if (v != tree.root()) {
      nbr[v] |= 1u << tree.parent(v);
      nbr[tree.parent(v)] |= 1u << v;
    }
  const std::uint32_t full = (1u << n) - 1;
  std::vector<Count> minb(static_cast<std::size_t>(n) + 1, n);
  for (std::uint32_t mask = 0;; ++mask) {
    Count border = 0;
    int card = 0;
    for (VertexId v = 0; v < n; ++v) {
      if ((mask >> v) & 1)
        ++card;
      else if (nbr[v] & mask)
        ++border;
    }
    minb[card] = std::min(minb[card], border);
    if (mask == full) break;
  }
  Count peak = 0;
  for (Count b : minb) peak = std::max(peak, b);
  return peak;
}

}  // namespace treeperim

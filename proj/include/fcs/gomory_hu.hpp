#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "fcs/error.hpp"
#include "fcs/graph.hpp"
#include "fcs/maxflow.hpp"
#include "fcs/single_source.hpp"
#include "fcs/sparsifier.hpp"

namespace fcs {

namespace detail {

class DisjointSets {
 public:
  explicit DisjointSets(NodeId n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  NodeId find(NodeId x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool unite(NodeId a, NodeId b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[std::max(a, b)] = std::min(a, b);
    return true;
  }

 private:
  std::vector<NodeId> parent_;
};

}  // namespace detail

// Cut-equivalent forest: one weighted spanning tree per connected component.
struct GHTree {
  NodeId n = 0;
  NodeId components = 0;
  std::vector<Edge> edges;  // u < v, w > 0; n - components of them

  // Builds from raw edges; rejects cycles and bad ids.
  static GHTree from_edges(NodeId n, std::vector<Edge> edges) {
    detail::DisjointSets ds(n);
    for (Edge& e : edges) {
      require(e.u >= 0 && e.v >= 0 && e.u < n && e.v < n && e.u != e.v, "gh tree: invalid edge endpoint");
      require(e.w > 0, "gh tree: edge weight must be positive");
      if (e.u > e.v) std::swap(e.u, e.v);
      require(ds.unite(e.u, e.v), "gh tree: edges contain a cycle");
    }
    std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
      return a.u != b.u ? a.u < b.u : a.v < b.v;
    });
    return {n, n - static_cast<NodeId>(edges.size()), std::move(edges)};
  }

  std::vector<std::vector<Arc>> adjacency() const {
    std::vector<std::vector<Arc>> adj(n);
    for (const Edge& e : edges) {
      adj[e.u].push_back({e.v, e.w});
      adj[e.v].push_back({e.u, e.w});
    }
    return adj;
  }

  friend bool operator==(const GHTree&, const GHTree&) = default;
};

struct GHQuery {
  Weight value = 0;
  Cut cut;  // side containing s
};

// Minimum edge on the tree path (the one nearest s on ties) and the side of
// s after removing it. Pairs in different components get 0 and s's component.
inline GHQuery gh_query(const GHTree& t, NodeId s, NodeId target) {
  require(s >= 0 && s < t.n && target >= 0 && target < t.n, "gh_query: node id out of range");
  require(s != target, "gh_query: s equals t");
  auto adj = t.adjacency();
  std::vector<NodeId> parent(t.n, -1);
  std::vector<Weight> up(t.n, 0);
  std::vector<char> seen(t.n, 0);
  std::vector<NodeId> order{s};
  seen[s] = 1;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (const Arc& a : adj[order[i]]) {
      if (!seen[a.to]) {
        seen[a.to] = 1;
        parent[a.to] = order[i];
        up[a.to] = a.w;
        order.push_back(a.to);
      }
    }
  }
  GHQuery q;
  if (!seen[target]) {
    q.value = 0;
    q.cut.side = order;
    std::sort(q.cut.side.begin(), q.cut.side.end());
    return q;
  }
  // Walk target -> s; keep the last minimum seen, which is nearest s.
  NodeId cut_child = -1;
  Weight best = 0;
  for (NodeId x = target; x != s; x = parent[x]) {
    if (cut_child < 0 || up[x] <= best) {
      best = up[x];
      cut_child = x;
    }
  }
  q.value = best;
  // Side of s: everything reachable from s without crossing (parent[cut_child], cut_child).
  std::vector<char> blocked(t.n, 0);
  std::vector<NodeId> stack{cut_child};
  blocked[cut_child] = 1;
  while (!stack.empty()) {
    NodeId x = stack.back();
    stack.pop_back();
    for (const Arc& a : adj[x]) {
      if (a.to != parent[x] && parent[a.to] == x && !blocked[a.to]) {
        blocked[a.to] = 1;
        stack.push_back(a.to);
      }
    }
  }
  for (NodeId x : order) {
    if (!blocked[x]) q.cut.side.push_back(x);
  }
  std::sort(q.cut.side.begin(), q.cut.side.end());
  q.cut.value = best;
  return q;
}

// Partition of V into super-nodes joined by a weighted tree.
struct PartitionTree {
  std::vector<std::vector<NodeId>> parts;
  std::vector<Edge> edges;  // between part indices

  NodeId size() const { return static_cast<NodeId>(parts.size()); }

  std::vector<NodeId> part_of(NodeId n) const {
    std::vector<NodeId> out(n, -1);
    for (NodeId i = 0; i < size(); ++i) {
      for (NodeId v : parts[i]) out[v] = i;
    }
    return out;
  }

  void validate(NodeId n) const {
    std::vector<NodeId> owner(n, -1);
    for (NodeId i = 0; i < size(); ++i) {
      require(!parts[i].empty(), "partition tree: empty super-node");
      for (NodeId v : parts[i]) {
        require(v >= 0 && v < n, "partition tree: node id out of range");
        require(owner[v] < 0, "partition tree: super-nodes overlap");
        owner[v] = i;
      }
    }
    for (NodeId o : owner) require(o >= 0, "partition tree: super-nodes do not cover V");
    require(static_cast<NodeId>(edges.size()) + 1 == size(), "partition tree: needs k - 1 tree edges");
    detail::DisjointSets ds(size());
    for (const Edge& e : edges) {
      require(e.u >= 0 && e.v >= 0 && e.u < size() && e.v < size(), "partition tree: bad edge endpoint");
      require(ds.unite(e.u, e.v), "partition tree: edges contain a cycle");
    }
  }

  static PartitionTree single(NodeId n) {
    std::vector<NodeId> all(n);
    std::iota(all.begin(), all.end(), 0);
    return {{std::move(all)}, {}};
  }
};

// Partition tree obtained from a connected GH tree by contracting the tree
// edges flagged in `merge`.
inline PartitionTree coarsen(const GHTree& t, std::span<const char> merge) {
  require(t.components == 1, "coarsen: tree must span one component");
  require(merge.size() == t.edges.size(), "coarsen: one flag per tree edge");
  detail::DisjointSets ds(t.n);
  for (std::size_t i = 0; i < t.edges.size(); ++i) {
    if (merge[i]) ds.unite(t.edges[i].u, t.edges[i].v);
  }
  std::vector<NodeId> label(t.n);
  for (NodeId v = 0; v < t.n; ++v) label[v] = ds.find(v);
  ContractionMap map = ContractionMap::from_labels(label);
  PartitionTree pt;
  pt.parts = map.classes();
  for (std::size_t i = 0; i < t.edges.size(); ++i) {
    if (!merge[i]) pt.edges.push_back({map.super_of(t.edges[i].u), map.super_of(t.edges[i].v), t.edges[i].w});
  }
  return pt;
}

namespace detail {

// Label per node: nodes of part i keep distinct labels, every component of
// the tree minus part i shares one label.
inline std::vector<NodeId> cag_labels(const PartitionTree& pt, NodeId n, NodeId i) {
  std::vector<std::vector<NodeId>> adj(pt.size());
  for (const Edge& e : pt.edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  std::vector<NodeId> comp(pt.size(), -1);
  NodeId next = 0;
  for (NodeId start : adj[i]) {
    if (comp[start] >= 0) continue;
    std::vector<NodeId> stack{start};
    comp[start] = next;
    while (!stack.empty()) {
      NodeId x = stack.back();
      stack.pop_back();
      for (NodeId y : adj[x]) {
        if (y != i && comp[y] < 0) {
          comp[y] = next;
          stack.push_back(y);
        }
      }
    }
    ++next;
  }
  std::vector<NodeId> part = pt.part_of(n);
  std::vector<NodeId> label(n);
  for (NodeId v = 0; v < n; ++v) label[v] = part[v] == i ? v : n + comp[part[v]];
  return label;
}

}  // namespace detail

// Auxiliary graph of super-node i: contract each component of T \ {V_i}.
inline Graph build_cag(const Graph& g, const PartitionTree& pt, NodeId i) {
  pt.validate(g.node_count());
  require(i >= 0 && i < pt.size(), "build_cag: super-node index out of range");
  return contract(g, ContractionMap::from_labels(detail::cag_labels(pt, g.node_count(), i)));
}

// The same construction applied to a sparsifier of g: a super-node of h that
// touches several components of T \ {V_i} merges them.
inline Graph build_sparsified_cag(const Sparsifier& h, const PartitionTree& pt, NodeId i) {
  const NodeId n = h.map.original_count();
  pt.validate(n);
  require(h.graph.node_count() == h.map.super_count(), "build_sparsified_cag: sparsifier graph does not match map");
  require(i >= 0 && i < pt.size(), "build_sparsified_cag: super-node index out of range");
  std::vector<NodeId> label = detail::cag_labels(pt, n, i);
  const NodeId k = h.map.super_count();
  detail::DisjointSets ds(k + 2 * n);
  for (NodeId v = 0; v < n; ++v) {
    if (label[v] >= n) ds.unite(h.map.super_of(v), k + label[v]);
  }
  std::vector<NodeId> super_label(k);
  for (NodeId s = 0; s < k; ++s) super_label[s] = ds.find(s);
  return contract(h.graph, ContractionMap::from_labels(super_label));
}

struct CagTotals {
  Weight nodes = 0;
  Weight weighted_edges = 0;
};

inline CagTotals cag_totals(const Sparsifier& h, const PartitionTree& pt) {
  CagTotals t;
  for (NodeId i = 0; i < pt.size(); ++i) {
    Graph c = build_sparsified_cag(h, pt, i);
    t.nodes += c.node_count();
    t.weighted_edges += c.total_weight();
  }
  return t;
}

inline CagTotals cag_totals(const Graph& g, const PartitionTree& pt) {
  CagTotals t;
  for (NodeId i = 0; i < pt.size(); ++i) {
    Graph c = build_cag(g, pt, i);
    t.nodes += c.node_count();
    t.weighted_edges += c.total_weight();
  }
  return t;
}

// Gomory-Hu tree by the classical contraction recursion: split a super-node
// with a minimum s,t-cut in its auxiliary graph and reattach neighbours.
inline GHTree gomory_hu(const Graph& g) {
  const NodeId n = g.node_count();
  std::vector<NodeId> comp = component_labels(g);
  std::vector<Edge> out;
  NodeId ncomp = 0;
  for (NodeId c : comp) ncomp = std::max(ncomp, c + 1);
  std::vector<std::vector<NodeId>> members(ncomp);
  for (NodeId v = 0; v < n; ++v) members[comp[v]].push_back(v);

  for (const auto& nodes : members) {
    if (nodes.size() < 2) continue;
    // Super-node tree over this component.
    std::vector<std::vector<NodeId>> parts{nodes};
    std::vector<Edge> tree;  // between part indices
    std::vector<NodeId> part_of(n, -1);
    for (NodeId v : nodes) part_of[v] = 0;
    std::vector<NodeId> pending{0};
    while (!pending.empty()) {
      NodeId x = pending.back();
      pending.pop_back();
      if (parts[x].size() < 2) continue;
      const NodeId px = static_cast<NodeId>(parts.size());
      std::vector<std::vector<NodeId>> adj(px);
      std::vector<std::size_t> incident;
      for (std::size_t e = 0; e < tree.size(); ++e) {
        adj[tree[e].u].push_back(tree[e].v);
        adj[tree[e].v].push_back(tree[e].u);
        if (tree[e].u == x || tree[e].v == x) incident.push_back(e);
      }
      // Component label of every part in tree \ {x}, keyed by x's neighbour.
      std::vector<NodeId> branch(px, -1);
      NodeId nb = 0;
      for (NodeId start : adj[x]) {
        std::vector<NodeId> stack{start};
        branch[start] = nb;
        while (!stack.empty()) {
          NodeId y = stack.back();
          stack.pop_back();
          for (NodeId z : adj[y]) {
            if (z != x && branch[z] < 0) {
              branch[z] = nb;
              stack.push_back(z);
            }
          }
        }
        ++nb;
      }
      const std::vector<NodeId>& xs = parts[x];
      const NodeId kx = static_cast<NodeId>(xs.size());
      std::vector<NodeId> label(n, -1);
      for (NodeId j = 0; j < kx; ++j) label[xs[j]] = j;
      for (NodeId v : nodes) {
        if (part_of[v] != x) label[v] = kx + branch[part_of[v]];
      }
      FlowNetwork net(kx + nb);
      for (NodeId v : nodes) {
        for (const Arc& a : g.neighbors(v)) {
          if (v < a.to && label[v] != label[a.to]) net.add_undirected(label[v], label[a.to], a.w);
        }
      }
      const NodeId s = 0;
      const NodeId t = 1;
      Weight value = net.max_flow(s, t);
      std::vector<char> reach = net.residual_reachable(s);

      std::vector<NodeId> keep;
      std::vector<NodeId> moved;
      for (NodeId j = 0; j < kx; ++j) (reach[j] ? keep : moved).push_back(xs[j]);
      const NodeId y = px;
      parts[x] = keep;
      parts.push_back(moved);
      for (NodeId v : moved) part_of[v] = y;
      for (std::size_t e : incident) {
        Edge& te = tree[e];
        NodeId other = te.u == x ? te.v : te.u;
        if (!reach[kx + branch[other]]) {
          if (te.u == x) te.u = y; else te.v = y;
        }
      }
      tree.push_back({x, y, value});
      pending.push_back(x);
      pending.push_back(y);
    }
    for (const Edge& te : tree) out.push_back({parts[te.u][0], parts[te.v][0], te.w});
  }
  return GHTree::from_edges(n, std::move(out));
}

struct TreeCheck {
  bool passed = true;
  std::string reason;
  NodeId s = -1;
  NodeId t = -1;
};

// Full check: forest over g's components, and every tree edge (u, v) induces a
// cut of value w(u, v) = lambda(u, v). With `spot_checks` > 0 only that many
// random edges get the max-flow comparison.
inline TreeCheck validate_gh_tree(const Graph& g, const GHTree& t, int spot_checks = -1, std::uint64_t seed = 1) {
  TreeCheck r;
  auto bad = [&](std::string why, NodeId s, NodeId u) {
    r.passed = false;
    r.reason = std::move(why);
    r.s = s;
    r.t = u;
    return r;
  };
  if (t.n != g.node_count()) return bad("tree has " + std::to_string(t.n) + " nodes, graph has " + std::to_string(g.node_count()), -1, -1);
  detail::DisjointSets ds(t.n);
  for (const Edge& e : t.edges) {
    if (e.u < 0 || e.v < 0 || e.u >= t.n || e.v >= t.n || e.u == e.v) return bad("invalid tree edge", e.u, e.v);
    if (!ds.unite(e.u, e.v)) return bad("tree edges contain a cycle", e.u, e.v);
  }
  std::vector<NodeId> comp = component_labels(g);
  for (NodeId v = 0; v < t.n; ++v) {
    for (const Arc& a : g.neighbors(v)) {
      if (ds.find(v) != ds.find(a.to)) return bad("tree does not span a graph component", v, a.to);
    }
  }
  for (const Edge& e : t.edges) {
    if (comp[e.u] != comp[e.v]) return bad("tree edge joins different graph components", e.u, e.v);
  }
  std::vector<std::size_t> check(t.edges.size());
  std::iota(check.begin(), check.end(), 0);
  if (spot_checks >= 0 && static_cast<std::size_t>(spot_checks) < check.size()) {
    std::mt19937_64 rng(seed);
    std::shuffle(check.begin(), check.end(), rng);
    check.resize(spot_checks);
  }
  for (std::size_t i = 0; i < t.edges.size(); ++i) {
    const Edge& e = t.edges[i];
    GHQuery q = gh_query(t, e.u, e.v);
    Weight induced = detail::crossing(g, membership(g.node_count(), q.cut.side));
    if (q.value != e.w || induced != e.w) {
      return bad("tree edge " + std::to_string(e.u) + "-" + std::to_string(e.v) + " of weight " +
                     std::to_string(e.w) + " induces a cut of value " + std::to_string(induced),
                 e.u, e.v);
    }
  }
  for (std::size_t i : check) {
    const Edge& e = t.edges[i];
    Weight lambda = max_flow(g, e.u, e.v).value;
    if (lambda != e.w) {
      return bad("tree edge " + std::to_string(e.u) + "-" + std::to_string(e.v) + " has weight " +
                     std::to_string(e.w) + " but the minimum cut is " + std::to_string(lambda),
                 e.u, e.v);
    }
  }
  return r;
}

// Contracts every component of the forest formed by tree edges whose induced
// cut is unfriendly. Works on any weighted graph.
inline Sparsifier friendly_mincut_contraction(const Graph& g, const GHTree& t) {
  require(t.n == g.node_count(), "friendly_mincut_contraction: tree is for a different node count");
  const NodeId n = g.node_count();
  auto adj = t.adjacency();
  std::vector<NodeId> parent(n, -1);
  std::vector<NodeId> tin(n, -1);
  std::vector<NodeId> tout(n, -1);
  NodeId clock = 0;
  for (NodeId root = 0; root < n; ++root) {
    if (tin[root] >= 0) continue;
    std::vector<std::pair<NodeId, std::size_t>> stack{{root, 0}};
    tin[root] = clock++;
    while (!stack.empty()) {
      auto& [x, i] = stack.back();
      if (i < adj[x].size()) {
        NodeId y = adj[x][i++].to;
        if (y != parent[x]) {
          parent[y] = x;
          tin[y] = clock++;
          stack.push_back({y, 0});
        }
      } else {
        tout[x] = clock;
        stack.pop_back();
      }
    }
  }
  detail::DisjointSets ds(n);
  std::vector<Weight> cross(n);
  for (const Edge& te : t.edges) {
    NodeId child = parent[te.u] == te.v ? te.u : te.v;
    auto inside = [&](NodeId v) { return tin[child] <= tin[v] && tin[v] < tout[child]; };
    std::fill(cross.begin(), cross.end(), 0);
    for (const Edge& e : g.edges()) {
      if (inside(e.u) != inside(e.v)) {
        cross[e.u] += e.w;
        cross[e.v] += e.w;
      }
    }
    bool friendly = true;
    for (NodeId v = 0; v < n && friendly; ++v) friendly = !sends_too_much(cross[v], g.degree(v));
    if (!friendly) ds.unite(te.u, te.v);
  }
  std::vector<NodeId> label(n);
  for (NodeId v = 0; v < n; ++v) label[v] = ds.find(v);
  return Sparsifier::from_map(g, ContractionMap::from_labels(label));
}

// Friendly minimum s,t-cut sparsifier of a simple graph from its GH tree.
inline Sparsifier friendly_mincut_sparsifier_from_gh(const Graph& g, const GHTree& t) {
  detail::require_simple(g, "friendly_mincut_sparsifier_from_gh");
  TreeCheck c = validate_gh_tree(g, t, 0);
  if (!c.passed) fail(ErrorKind::kVerification, "friendly_mincut_sparsifier_from_gh: " + c.reason);
  return friendly_mincut_contraction(g, t);
}

// Precomputed friendly branch: the iterative friendly n-cut sparsifier H and
// a Gomory-Hu tree of H.
struct AcceleratedContext {
  Sparsifier h;
  GHTree tree;
};

inline AcceleratedContext make_accelerated_context(const Graph& g, const SparsifyConfig& cfg = {}) {
  detail::require_simple(g, "accelerated single-source");
  AcceleratedContext ctx;
  ctx.h = friendly_sparsify(g, std::max<Weight>(1, g.node_count()), cfg);
  ctx.tree = gomory_hu(ctx.h.graph);
  return ctx;
}

// Exact single-source minimum cuts: friendly minimum cuts come from the GH
// tree of the sparsifier, unfriendly ones from single_source_unfriendly.
inline EstimateTable accelerated_single_source(const Graph& g, const AcceleratedContext& ctx, NodeId p,
                                               const SingleSourceOptions& opt = {}) {
  detail::require_simple(g, "accelerated_single_source");
  require(g.contains(p), "accelerated_single_source: source out of range");
  require(ctx.h.map.original_count() == g.node_count(), "accelerated_single_source: context is for another graph");
  EstimateTable t = single_source_unfriendly(g, p, opt);
  const NodeId sp = ctx.h.map.super_of(p);
  std::map<NodeId, GHQuery> cache;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    NodeId sv = ctx.h.map.super_of(v);
    if (v == p || sv == sp) continue;
    auto it = cache.find(sv);
    if (it == cache.end()) it = cache.emplace(sv, gh_query(ctx.tree, sp, sv)).first;
    if (it->second.value < t.value[v]) {
      std::vector<NodeId> side_p = ctx.h.lift(it->second.cut.side);
      t.offer(v, it->second.value, complement(g.node_count(), side_p));
    }
  }
  return t;
}

inline EstimateTable accelerated_single_source(const Graph& g, NodeId p, const SingleSourceOptions& opt = {}) {
  return accelerated_single_source(g, make_accelerated_context(g), p, opt);
}

// Cut tree from n - 1 minimum cuts of g (Gusfield), each taken from an
// accelerated single-source computation.
inline GHTree accelerated_gomory_hu(const Graph& g, const SparsifyConfig& cfg = {},
                                    const SingleSourceOptions& opt = {}) {
  detail::require_simple(g, "accelerated_gomory_hu");
  const NodeId n = g.node_count();
  if (n < 2) return GHTree::from_edges(n, {});
  AcceleratedContext ctx = make_accelerated_context(g, cfg);
  std::vector<NodeId> p(n, 0);
  std::vector<Weight> fl(n, 0);
  std::map<NodeId, EstimateTable> tables;
  for (NodeId s = 1; s < n; ++s) {
    NodeId t = p[s];
    auto it = tables.find(t);
    if (it == tables.end()) it = tables.emplace(t, accelerated_single_source(g, ctx, t, opt)).first;
    Weight f = it->second.value[s];
    std::vector<char> in_x = membership(n, it->second.witness[s]);
    fl[s] = f;
    for (NodeId i = 0; i < n; ++i) {
      if (i != s && in_x[i] && p[i] == t) p[i] = s;
    }
    if (in_x[p[t]]) {
      p[s] = p[t];
      p[t] = s;
      fl[s] = fl[t];
      fl[t] = f;
    }
  }
  std::vector<Edge> edges;
  for (NodeId s = 1; s < n; ++s) {
    if (fl[s] > 0) edges.push_back({std::min(s, p[s]), std::max(s, p[s]), fl[s]});
  }
  return GHTree::from_edges(n, std::move(edges));
}

}  // namespace fcs

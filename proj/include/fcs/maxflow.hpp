#pragma once

#include <limits>
#include <span>
#include <vector>

#include "fcs/error.hpp"
#include "fcs/graph.hpp"

namespace fcs {

// Blocking-flow (Dinic) max-flow on a capacitated network. Undirected edges
// become an arc pair with equal capacity in both directions.
class FlowNetwork {
 public:
  static constexpr Weight kInfinite = std::numeric_limits<Weight>::max() / 4;

  explicit FlowNetwork(NodeId n) : head_(n, -1), level_(n), cursor_(n) {}

  NodeId node_count() const { return static_cast<NodeId>(head_.size()); }

  void add_undirected(NodeId u, NodeId v, Weight capacity) { add_pair(u, v, capacity, capacity); }
  void add_directed(NodeId u, NodeId v, Weight capacity) { add_pair(u, v, capacity, 0); }

  Weight max_flow(NodeId s, NodeId t) {
    Weight total = 0;
    while (build_levels(s, t)) {
      for (NodeId v = 0; v < node_count(); ++v) cursor_[v] = head_[v];
      while (Weight pushed = augment(s, t, kInfinite)) total += pushed;
    }
    return total;
  }

  // Nodes reachable from s in the residual network: the inclusion-minimal
  // source side of a minimum cut once max_flow has run.
  std::vector<char> residual_reachable(NodeId s) const {
    std::vector<char> seen(node_count(), 0);
    std::vector<NodeId> stack{s};
    seen[s] = 1;
    while (!stack.empty()) {
      NodeId v = stack.back();
      stack.pop_back();
      for (int a = head_[v]; a >= 0; a = arcs_[a].next) {
        if (arcs_[a].cap > 0 && !seen[arcs_[a].to]) {
          seen[arcs_[a].to] = 1;
          stack.push_back(arcs_[a].to);
        }
      }
    }
    return seen;
  }

 private:
  struct FlowArc {
    NodeId to;
    int next;
    Weight cap;  // residual capacity
  };

  void add_pair(NodeId u, NodeId v, Weight forward, Weight backward) {
    arcs_.push_back({v, head_[u], forward});
    head_[u] = static_cast<int>(arcs_.size()) - 1;
    arcs_.push_back({u, head_[v], backward});
    head_[v] = static_cast<int>(arcs_.size()) - 1;
  }

  bool build_levels(NodeId s, NodeId t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::vector<NodeId> queue{s};
    level_[s] = 0;
    for (std::size_t i = 0; i < queue.size(); ++i) {
      NodeId v = queue[i];
      for (int a = head_[v]; a >= 0; a = arcs_[a].next) {
        if (arcs_[a].cap > 0 && level_[arcs_[a].to] < 0) {
          level_[arcs_[a].to] = level_[v] + 1;
          queue.push_back(arcs_[a].to);
        }
      }
    }
    return level_[t] >= 0;
  }

  Weight augment(NodeId v, NodeId t, Weight limit) {
    if (v == t) return limit;
    for (int& a = cursor_[v]; a >= 0; a = arcs_[a].next) {
      FlowArc& arc = arcs_[a];
      if (arc.cap <= 0 || level_[arc.to] != level_[v] + 1) continue;
      Weight pushed = augment(arc.to, t, std::min(limit, arc.cap));
      if (pushed > 0) {
        arc.cap -= pushed;
        arcs_[a ^ 1].cap += pushed;
        return pushed;
      }
    }
    return 0;
  }

  std::vector<int> head_;
  std::vector<FlowArc> arcs_;
  std::vector<int> level_;
  std::vector<int> cursor_;
};

struct FlowResult {
  Weight value = 0;
  Cut min_source_side;  // inclusion-minimal source side, value == value
};

// Exact minimum s,t-cut with the inclusion-minimal source side.
inline FlowResult max_flow(const Graph& g, NodeId s, NodeId t) {
  require(g.contains(s) && g.contains(t), "max_flow: node id out of range");
  require(s != t, "max_flow: source equals sink");
  FlowNetwork net(g.node_count());
  for (const Edge& e : g.edges()) net.add_undirected(e.u, e.v, e.w);
  FlowResult r;
  r.value = net.max_flow(s, t);
  std::vector<char> reach = net.residual_reachable(s);
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (reach[v]) r.min_source_side.side.push_back(v);
  }
  r.min_source_side.value = r.value;
  return r;
}

// Minimum cut separating node set a from node set b; the returned side
// contains a and is inclusion-minimal.
inline FlowResult min_cut_between_sets(const Graph& g, std::span<const NodeId> a,
                                       std::span<const NodeId> b) {
  std::vector<NodeId> sa = normalize_subset(g, a);
  std::vector<NodeId> sb = normalize_subset(g, b);
  require(!sa.empty() && !sb.empty(), "min_cut_between_sets: empty terminal set");
  std::vector<char> in_a = membership(g.node_count(), sa);
  for (NodeId v : sb) require(!in_a[v], "min_cut_between_sets: terminal sets overlap");

  const NodeId n = g.node_count();
  const NodeId source = n;
  const NodeId sink = n + 1;
  FlowNetwork net(n + 2);
  for (const Edge& e : g.edges()) net.add_undirected(e.u, e.v, e.w);
  for (NodeId v : sa) net.add_directed(source, v, FlowNetwork::kInfinite);
  for (NodeId v : sb) net.add_directed(v, sink, FlowNetwork::kInfinite);
  FlowResult r;
  r.value = net.max_flow(source, sink);
  std::vector<char> reach = net.residual_reachable(source);
  for (NodeId v = 0; v < n; ++v) {
    if (reach[v]) r.min_source_side.side.push_back(v);
  }
  r.min_source_side.value = r.value;
  return r;
}

}  // namespace fcs

#pragma once

#include <algorithm>
#include <bit>
#include <span>
#include <vector>

#include "fcs/error.hpp"
#include "fcs/graph.hpp"
#include "fcs/maxflow.hpp"
#include "fcs/parallel.hpp"

namespace fcs {

struct IsolatingCuts {
  std::vector<NodeId> terminals;  // sorted
  std::vector<Cut> cuts;          // cuts[i] isolates terminals[i]; inclusion-minimal
  int global_flows = 0;
  int local_flows = 0;

  const Cut& of(NodeId v) const {
    auto it = std::lower_bound(terminals.begin(), terminals.end(), v);
    require(it != terminals.end() && *it == v, "isolating cuts: node is not a terminal");
    return cuts[it - terminals.begin()];
  }
};

namespace detail {

inline std::vector<NodeId> check_terminals(const Graph& g, std::span<const NodeId> r) {
  std::vector<NodeId> t = normalize_subset(g, r);
  require(t.size() >= 2, "isolating cuts: need at least two terminals");
  return t;
}

}  // namespace detail

// Minimum isolating cuts via ceil(log2 |R|) bipartition max-flows plus one
// local max-flow per terminal inside its region.
inline IsolatingCuts isolating_cuts(const Graph& g, std::span<const NodeId> r, int threads = 1) {
  IsolatingCuts out;
  out.terminals = detail::check_terminals(g, r);
  const NodeId n = g.node_count();
  const std::size_t k = out.terminals.size();
  const int bits = std::bit_width(k - 1);

  // region[v] collects, bit by bit, the index pattern of the side containing v;
  // v lies in terminal i's region iff its pattern equals i on every bit.
  std::vector<std::uint32_t> pattern(n, 0);
  std::vector<char> alive(n, 1);
  for (int b = 0; b < bits; ++b) {
    std::vector<NodeId> zero;
    std::vector<NodeId> one;
    for (std::size_t i = 0; i < k; ++i) ((i >> b) & 1u ? one : zero).push_back(out.terminals[i]);
    FlowResult f = min_cut_between_sets(g, zero, one);
    ++out.global_flows;
    std::vector<char> in = membership(n, f.min_source_side.side);
    for (NodeId v = 0; v < n; ++v) {
      if (!in[v]) pattern[v] |= std::uint32_t{1} << b;
    }
  }

  std::vector<std::vector<NodeId>> region(k);
  for (NodeId v = 0; v < n; ++v) {
    if (pattern[v] < k) region[pattern[v]].push_back(v);
  }
  out.cuts.resize(k);
  parallel_for(k, threads, [&](std::size_t i) {
    const std::vector<NodeId>& u = region[i];
    std::vector<NodeId> local(n, -1);
    for (std::size_t j = 0; j < u.size(); ++j) local[u[j]] = static_cast<NodeId>(j);
    const NodeId sink = static_cast<NodeId>(u.size());
    FlowNetwork net(sink + 1);
    for (const Edge& e : g.edges()) {
      NodeId a = local[e.u];
      NodeId c = local[e.v];
      if (a < 0 && c < 0) continue;
      net.add_undirected(a < 0 ? sink : a, c < 0 ? sink : c, e.w);
    }
    NodeId source = local[out.terminals[i]];
    Cut cut;
    cut.value = net.max_flow(source, sink);
    std::vector<char> reach = net.residual_reachable(source);
    for (std::size_t j = 0; j < u.size(); ++j) {
      if (reach[j]) cut.side.push_back(u[j]);
    }
    out.cuts[i] = std::move(cut);
  });
  out.local_flows = static_cast<int>(k);
  return out;
}

// Reference implementation: one max-flow per terminal against all others.
inline IsolatingCuts isolating_cuts_direct(const Graph& g, std::span<const NodeId> r) {
  IsolatingCuts out;
  out.terminals = detail::check_terminals(g, r);
  for (NodeId v : out.terminals) {
    std::vector<NodeId> rest;
    for (NodeId u : out.terminals) {
      if (u != v) rest.push_back(u);
    }
    NodeId src[1] = {v};
    out.cuts.push_back(min_cut_between_sets(g, src, rest).min_source_side);
    ++out.global_flows;
  }
  return out;
}

}  // namespace fcs

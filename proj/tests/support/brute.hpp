#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "fcs/graph.hpp"

// Independent, deliberately naive reference computations for tests. Nothing
// here shares code paths with the library beyond the Graph container.
namespace brute {

using fcs::Edge;
using fcs::Graph;
using fcs::NodeId;
using fcs::Weight;

inline bool in(std::uint32_t mask, NodeId v) { return (mask >> v) & 1u; }

inline Weight cut_value(const Graph& g, std::uint32_t mask) {
  Weight total = 0;
  for (const Edge& e : g.edges()) {
    if (in(mask, e.u) != in(mask, e.v)) total += e.w;
  }
  return total;
}

// 10 * cross > 6 * deg for some node.
inline bool friendly(const Graph& g, std::uint32_t mask) {
  for (NodeId v = 0; v < g.node_count(); ++v) {
    Weight deg = 0;
    Weight cross = 0;
    for (const Edge& e : g.edges()) {
      if (e.u != v && e.v != v) continue;
      NodeId other = e.u == v ? e.v : e.u;
      deg += e.w;
      if (in(mask, other) != in(mask, v)) cross += e.w;
    }
    if (10 * cross > 6 * deg) return false;
  }
  return true;
}

inline std::uint32_t full(NodeId n) { return (std::uint32_t{1} << n) - 1; }

inline Weight min_cut(const Graph& g, NodeId s, NodeId t) {
  Weight best = std::numeric_limits<Weight>::max();
  for (std::uint32_t m = 1; m < full(g.node_count()); ++m) {
    if (in(m, s) && !in(m, t)) best = std::min(best, cut_value(g, m));
  }
  return best;
}

inline std::uint32_t mask_of(const std::vector<NodeId>& side) {
  std::uint32_t m = 0;
  for (NodeId v : side) m |= std::uint32_t{1} << v;
  return m;
}

inline std::vector<NodeId> side_of(std::uint32_t mask, NodeId n) {
  std::vector<NodeId> out;
  for (NodeId v = 0; v < n; ++v) {
    if (in(mask, v)) out.push_back(v);
  }
  return out;
}

struct Classified {
  Weight value = 0;
  bool any_friendly = false;
  bool any_unfriendly = false;
};

inline Classified classify(const Graph& g, NodeId s, NodeId t) {
  Classified c;
  c.value = min_cut(g, s, t);
  for (std::uint32_t m = 1; m < full(g.node_count()); ++m) {
    if (in(m, s) && !in(m, t) && cut_value(g, m) == c.value) {
      (friendly(g, m) ? c.any_friendly : c.any_unfriendly) = true;
    }
  }
  return c;
}

inline Graph random_graph(NodeId n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  fcs::GraphBuilder b(n);
  for (NodeId x = 0; x < n; ++x) {
    for (NodeId y = x + 1; y < n; ++y) {
      if (u(rng) < p) b.add_edge(x, y);
    }
  }
  return std::move(b).build();
}

inline Graph random_weighted(NodeId n, double p, Weight max_w, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<Weight> wd(1, max_w);
  fcs::GraphBuilder b(n);
  for (NodeId x = 0; x < n; ++x) {
    for (NodeId y = x + 1; y < n; ++y) {
      if (u(rng) < p) b.add_edge(x, y, wd(rng));
    }
  }
  return std::move(b).build();
}

struct Instance {
  Graph g;
  NodeId n;
  double p;
  std::uint64_t seed;
};

// Random simple graphs, n in [lo, hi], p cycling over {0.2, 0.4, 0.6}.
inline std::vector<Instance> corpus(int count, NodeId lo, NodeId hi, std::uint64_t seed) {
  std::vector<Instance> out;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<NodeId> nd(lo, hi);
  const double ps[] = {0.2, 0.4, 0.6};
  for (int i = 0; i < count; ++i) {
    NodeId n = nd(rng);
    double p = ps[i % 3];
    std::uint64_t s = rng();
    out.push_back({random_graph(n, p, s), n, p, s});
  }
  return out;
}

}  // namespace brute

#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fcs/error.hpp"

namespace fcs {

using NodeId = std::int32_t;
using Weight = std::int64_t;

// A node is "unfriendly" to a cut when it sends strictly more than
// kCrossNum/kCrossDen of its degree across (alpha = 0.4 friendliness).
inline constexpr Weight kCrossNum = 3;
inline constexpr Weight kCrossDen = 5;

struct Edge {
  NodeId u = 0;
  NodeId v = 0;
  Weight w = 1;

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Arc {
  NodeId to = 0;
  Weight w = 0;
};

// Weighted undirected multigraph. Parallel edges are stored once with their
// multiplicity as weight; self-loop mass lives in extra_volume only (it counts
// towards volume but not towards degree). Immutable once built.
class Graph {
 public:
  Graph() = default;
  explicit Graph(NodeId n) : n_(n), offsets_(static_cast<std::size_t>(n) + 1, 0),
                             degree_(n, 0), extra_(n, 0) {
    require(n >= 0, "graph: negative node count");
  }

  NodeId node_count() const { return n_; }
  // Number of distinct adjacent pairs.
  std::size_t edge_count() const { return edges_.size(); }
  // Number of edges counting multiplicity.
  Weight total_weight() const { return total_weight_; }

  std::span<const Edge> edges() const { return edges_; }
  std::span<const Arc> neighbors(NodeId v) const {
    return {arcs_.data() + offsets_[v], arcs_.data() + offsets_[v + 1]};
  }
  Weight degree(NodeId v) const { return degree_[v]; }
  Weight extra_volume(NodeId v) const { return extra_[v]; }
  std::span<const Weight> degrees() const { return degree_; }
  std::span<const Weight> extra_volumes() const { return extra_; }

  bool contains(NodeId v) const { return v >= 0 && v < n_; }

  Weight max_weight() const {
    Weight best = 0;
    for (const Edge& e : edges_) best = std::max(best, e.w);
    return best;
  }

  // Unit weights and no self-loop mass.
  bool is_simple() const {
    for (const Edge& e : edges_) {
      if (e.w != 1) return false;
    }
    return std::all_of(extra_.begin(), extra_.end(), [](Weight x) { return x == 0; });
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_ && a.extra_ == b.extra_;
  }

 private:
  friend class GraphBuilder;

  NodeId n_ = 0;
  std::vector<Edge> edges_;  // u < v, sorted, unique pairs
  std::vector<std::size_t> offsets_{0};
  std::vector<Arc> arcs_;
  std::vector<Weight> degree_;
  std::vector<Weight> extra_;
  Weight total_weight_ = 0;
};

class GraphBuilder {
 public:
  explicit GraphBuilder(NodeId n) : n_(n), extra_(n, 0) {
    require(n >= 0, "graph: negative node count");
  }

  NodeId node_count() const { return n_; }

  GraphBuilder& add_edge(NodeId u, NodeId v, Weight w = 1) {
    require(u >= 0 && u < n_ && v >= 0 && v < n_,
            "graph: edge endpoint out of range");
    require(u != v, "graph: self-loop edge");
    require(w > 0, "graph: non-positive weight");
    if (u > v) std::swap(u, v);
    edges_.push_back({u, v, w});
    return *this;
  }

  GraphBuilder& add_extra_volume(NodeId v, Weight amount) {
    require(v >= 0 && v < n_, "graph: node out of range");
    require(amount >= 0, "graph: negative extra volume");
    extra_[v] += amount;
    return *this;
  }

  Graph build() && {
    std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
      return a.u != b.u ? a.u < b.u : a.v < b.v;
    });
    Graph g(n_);
    for (const Edge& e : edges_) {
      if (!g.edges_.empty() && g.edges_.back().u == e.u && g.edges_.back().v == e.v) {
        g.edges_.back().w += e.w;
      } else {
        g.edges_.push_back(e);
      }
    }
    for (const Edge& e : g.edges_) {
      ++g.offsets_[e.u + 1];
      ++g.offsets_[e.v + 1];
      g.degree_[e.u] += e.w;
      g.degree_[e.v] += e.w;
      g.total_weight_ += e.w;
    }
    for (NodeId v = 0; v < n_; ++v) g.offsets_[v + 1] += g.offsets_[v];
    g.arcs_.resize(g.offsets_.back());
    std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
    for (const Edge& e : g.edges_) {
      g.arcs_[fill[e.u]++] = {e.v, e.w};
      g.arcs_[fill[e.v]++] = {e.u, e.w};
    }
    g.extra_ = std::move(extra_);
    return g;
  }

 private:
  NodeId n_;
  std::vector<Edge> edges_;
  std::vector<Weight> extra_;
};

inline Graph make_graph(NodeId n, std::span<const Edge> edges) {
  GraphBuilder b(n);
  for (const Edge& e : edges) b.add_edge(e.u, e.v, e.w);
  return std::move(b).build();
}

inline Graph make_graph(NodeId n, std::initializer_list<Edge> edges) {
  return make_graph(n, std::span<const Edge>(edges.begin(), edges.size()));
}

// One side of a bipartition plus its crossing weight. `side` is sorted.
struct Cut {
  std::vector<NodeId> side;
  Weight value = 0;

  friend bool operator==(const Cut&, const Cut&) = default;
};

// Sorted, de-duplicated copy of a node subset; throws on out-of-range ids.
inline std::vector<NodeId> normalize_subset(const Graph& g, std::span<const NodeId> s) {
  std::vector<NodeId> out(s.begin(), s.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  for (NodeId v : out) require(g.contains(v), "node id out of range: " + std::to_string(v));
  return out;
}

inline std::vector<char> membership(NodeId n, std::span<const NodeId> s) {
  std::vector<char> in(n, 0);
  for (NodeId v : s) in[v] = 1;
  return in;
}

inline std::vector<NodeId> complement(NodeId n, std::span<const NodeId> s) {
  std::vector<char> in = membership(n, s);
  std::vector<NodeId> out;
  for (NodeId v = 0; v < n; ++v) {
    if (!in[v]) out.push_back(v);
  }
  return out;
}

inline Weight degree(const Graph& g, NodeId v) {
  require(g.contains(v), "degree: node id out of range");
  return g.degree(v);
}

inline Weight volume(const Graph& g, std::span<const NodeId> s) {
  Weight total = 0;
  for (NodeId v : normalize_subset(g, s)) total += g.degree(v) + g.extra_volume(v);
  return total;
}

namespace detail {

inline Weight crossing(const Graph& g, const std::vector<char>& in) {
  Weight total = 0;
  for (const Edge& e : g.edges()) {
    if (in[e.u] != in[e.v]) total += e.w;
  }
  return total;
}

inline std::vector<NodeId> proper_side(const Graph& g, std::span<const NodeId> s) {
  std::vector<NodeId> side = normalize_subset(g, s);
  require(!side.empty(), "cut side is empty");
  require(static_cast<NodeId>(side.size()) < g.node_count(), "cut side is the full node set");
  return side;
}

}  // namespace detail

inline Weight cut_value(const Graph& g, std::span<const NodeId> s) {
  std::vector<NodeId> side = detail::proper_side(g, s);
  return detail::crossing(g, membership(g.node_count(), side));
}

inline Cut make_cut(const Graph& g, std::span<const NodeId> s) {
  std::vector<NodeId> side = detail::proper_side(g, s);
  Weight value = detail::crossing(g, membership(g.node_count(), side));
  return {std::move(side), value};
}

// Per-node weight sent to the opposite side of the cut.
inline std::vector<Weight> crossing_weights(const Graph& g, const std::vector<char>& in) {
  std::vector<Weight> cross(g.node_count(), 0);
  for (const Edge& e : g.edges()) {
    if (in[e.u] != in[e.v]) {
      cross[e.u] += e.w;
      cross[e.v] += e.w;
    }
  }
  return cross;
}

inline bool sends_too_much(Weight cross, Weight deg) {
  return kCrossDen * cross > kCrossNum * deg;
}

// True iff no node on either side sends more than 0.6 of its degree across.
// `base_degrees`, when non-empty, replaces g's own degrees (one entry per node
// of g); use it for contracted graphs whose nodes carry aggregated base degree.
inline bool is_friendly(const Graph& g, std::span<const NodeId> s,
                        std::span<const Weight> base_degrees = {}) {
  std::vector<NodeId> side = detail::proper_side(g, s);
  require(base_degrees.empty() || base_degrees.size() == static_cast<std::size_t>(g.node_count()),
          "is_friendly: base degree table has wrong size");
  std::vector<Weight> cross = crossing_weights(g, membership(g.node_count(), side));
  for (NodeId v = 0; v < g.node_count(); ++v) {
    Weight deg = base_degrees.empty() ? g.degree(v) : base_degrees[v];
    if (sends_too_much(cross[v], deg)) return false;
  }
  return true;
}

// Component label per node (labels 0..k-1 in order of smallest member).
inline std::vector<NodeId> component_labels(const Graph& g, NodeId* count = nullptr) {
  std::vector<NodeId> label(g.node_count(), -1);
  NodeId k = 0;
  std::vector<NodeId> stack;
  for (NodeId s = 0; s < g.node_count(); ++s) {
    if (label[s] >= 0) continue;
    label[s] = k;
    stack.push_back(s);
    while (!stack.empty()) {
      NodeId v = stack.back();
      stack.pop_back();
      for (const Arc& a : g.neighbors(v)) {
        if (label[a.to] < 0) {
          label[a.to] = k;
          stack.push_back(a.to);
        }
      }
    }
    ++k;
  }
  if (count != nullptr) *count = k;
  return label;
}

// Partition of original nodes into super-nodes.
class ContractionMap {
 public:
  ContractionMap() = default;

  // `super_of` must be total and surjective onto 0..k-1.
  explicit ContractionMap(std::vector<NodeId> super_of) : super_of_(std::move(super_of)) {
    NodeId k = 0;
    for (NodeId s : super_of_) {
      require(s >= 0, "contraction map: negative super-node id");
      k = std::max(k, s + 1);
    }
    size_of_.assign(k, 0);
    for (NodeId s : super_of_) ++size_of_[s];
    for (NodeId c : size_of_) require(c > 0, "contraction map: super-node ids are not surjective");
  }

  static ContractionMap identity(NodeId n) {
    std::vector<NodeId> ids(n);
    std::iota(ids.begin(), ids.end(), 0);
    return ContractionMap(std::move(ids));
  }

  // Arbitrary labels; renumbered densely in order of first appearance.
  static ContractionMap from_labels(std::span<const NodeId> labels) {
    std::vector<NodeId> remap;
    std::vector<NodeId> ids(labels.size());
    NodeId max_label = 0;
    for (NodeId l : labels) max_label = std::max(max_label, l);
    remap.assign(static_cast<std::size_t>(max_label) + 1, -1);
    NodeId next = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      require(labels[i] >= 0, "contraction map: negative label");
      if (remap[labels[i]] < 0) remap[labels[i]] = next++;
      ids[i] = remap[labels[i]];
    }
    return ContractionMap(std::move(ids));
  }

  NodeId original_count() const { return static_cast<NodeId>(super_of_.size()); }
  NodeId super_count() const { return static_cast<NodeId>(size_of_.size()); }
  NodeId super_of(NodeId v) const { return super_of_[v]; }
  NodeId size_of(NodeId s) const { return size_of_[s]; }
  std::span<const NodeId> labels() const { return super_of_; }

  std::vector<std::vector<NodeId>> classes() const {
    std::vector<std::vector<NodeId>> out(super_count());
    for (NodeId v = 0; v < original_count(); ++v) out[super_of_[v]].push_back(v);
    return out;
  }

  bool is_identity() const { return super_count() == original_count(); }

  // Composition: first this map, then `next` (defined on this map's super-nodes).
  ContractionMap then(const ContractionMap& next) const {
    require(next.original_count() == super_count(), "contraction map: composition size mismatch");
    std::vector<NodeId> ids(super_of_.size());
    for (std::size_t v = 0; v < ids.size(); ++v) ids[v] = next.super_of(super_of_[v]);
    return ContractionMap(std::move(ids));
  }

  friend bool operator==(const ContractionMap&, const ContractionMap&) = default;

 private:
  std::vector<NodeId> super_of_;
  std::vector<NodeId> size_of_;
};

// Quotient graph: merged-endpoint edges dropped, parallel edges summed,
// extra volume summed per super-node.
inline Graph contract(const Graph& g, const ContractionMap& map) {
  require(map.original_count() == g.node_count(), "contract: map size does not match graph");
  GraphBuilder b(map.super_count());
  for (const Edge& e : g.edges()) {
    NodeId a = map.super_of(e.u);
    NodeId c = map.super_of(e.v);
    if (a != c) b.add_edge(a, c, e.w);
  }
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (g.extra_volume(v) > 0) b.add_extra_volume(map.super_of(v), g.extra_volume(v));
  }
  return std::move(b).build();
}

// Splits every class into the connected pieces of the subgraph it induces in
// g, so that contracting the result yields a minor.
inline ContractionMap refine_connected(const Graph& g, const ContractionMap& map) {
  require(map.original_count() == g.node_count(), "refine: map size does not match graph");
  std::vector<NodeId> label(g.node_count(), -1);
  NodeId next = 0;
  std::vector<NodeId> stack;
  for (NodeId s = 0; s < g.node_count(); ++s) {
    if (label[s] >= 0) continue;
    label[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      NodeId v = stack.back();
      stack.pop_back();
      for (const Arc& a : g.neighbors(v)) {
        if (label[a.to] < 0 && map.super_of(a.to) == map.super_of(v)) {
          label[a.to] = next;
          stack.push_back(a.to);
        }
      }
    }
    ++next;
  }
  return ContractionMap(std::move(label));
}

// A contracted graph of a base graph together with the map that produced it.
struct Sparsifier {
  Graph graph;
  ContractionMap map;
  std::vector<Weight> base_degrees;  // degree of every original node in the base graph

  static Sparsifier identity(const Graph& g) {
    std::vector<Weight> deg(g.degrees().begin(), g.degrees().end());
    return {g, ContractionMap::identity(g.node_count()), std::move(deg)};
  }

  static Sparsifier from_map(const Graph& g, ContractionMap map) {
    Graph h = contract(g, map);
    std::vector<Weight> deg(g.degrees().begin(), g.degrees().end());
    return {std::move(h), std::move(map), std::move(deg)};
  }

  // Sum of member base degrees per super-node.
  std::vector<Weight> super_base_degrees() const {
    std::vector<Weight> out(map.super_count(), 0);
    for (NodeId v = 0; v < map.original_count(); ++v) out[map.super_of(v)] += base_degrees[v];
    return out;
  }

  // Original nodes covered by a set of super-nodes.
  std::vector<NodeId> lift(std::span<const NodeId> super_side) const {
    std::vector<char> in(map.super_count(), 0);
    for (NodeId s : super_side) in[s] = 1;
    std::vector<NodeId> out;
    for (NodeId v = 0; v < map.original_count(); ++v) {
      if (in[map.super_of(v)]) out.push_back(v);
    }
    return out;
  }

  // Super-nodes of an original-node set, or nullopt if some super-node
  // straddles the set (the cut is not preserved).
  std::optional<std::vector<NodeId>> project(std::span<const NodeId> side) const {
    std::vector<char> in = membership(map.original_count(), side);
    std::vector<int> state(map.super_count(), -1);
    for (NodeId v = 0; v < map.original_count(); ++v) {
      int& st = state[map.super_of(v)];
      if (st < 0) {
        st = in[v];
      } else if (st != in[v]) {
        return std::nullopt;
      }
    }
    std::vector<NodeId> out;
    for (NodeId s = 0; s < map.super_count(); ++s) {
      if (state[s] == 1) out.push_back(s);
    }
    return out;
  }
};

}  // namespace fcs

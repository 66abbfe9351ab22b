#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "fcs/error.hpp"
#include "fcs/graph.hpp"
#include "fcs/rational.hpp"

namespace fcs::gen {

inline Graph clique(NodeId n) {
  require(n >= 1, "clique: n must be positive");
  GraphBuilder b(n);
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) b.add_edge(u, v);
  }
  return std::move(b).build();
}

inline Graph path(NodeId n) {
  require(n >= 1, "path: n must be positive");
  GraphBuilder b(n);
  for (NodeId v = 0; v + 1 < n; ++v) b.add_edge(v, v + 1);
  return std::move(b).build();
}

// Center 0 joined to n - 1 leaves.
inline Graph star(NodeId n) {
  require(n >= 1, "star: n must be positive");
  GraphBuilder b(n);
  for (NodeId v = 1; v < n; ++v) b.add_edge(0, v);
  return std::move(b).build();
}

// Two k-cliques {0..k-1} and {k..2k-1} joined by the bridge (0, k).
inline Graph dumbbell(NodeId k) {
  require(k >= 2, "dumbbell: clique size must be at least 2");
  GraphBuilder b(2 * k);
  for (NodeId side = 0; side < 2; ++side) {
    for (NodeId u = 0; u < k; ++u) {
      for (NodeId v = u + 1; v < k; ++v) b.add_edge(side * k + u, side * k + v);
    }
  }
  b.add_edge(0, k);
  return std::move(b).build();
}

inline Graph gnp(NodeId n, double p, std::uint64_t seed) {
  require(n >= 1, "gnp: n must be positive");
  require(p >= 0.0 && p <= 1.0, "gnp: p must lie in [0, 1]");
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  GraphBuilder b(n);
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      if (coin(rng)) b.add_edge(u, v);
    }
  }
  return std::move(b).build();
}

// Uniform-ish d-regular simple graph by the pairing model with restarts.
inline Graph random_regular(NodeId n, NodeId d, std::uint64_t seed) {
  require(n >= 1 && d >= 0 && d < n, "random-regular: need 0 <= d < n");
  require((static_cast<std::int64_t>(n) * d) % 2 == 0, "random-regular: n * d must be even");
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<NodeId> points;
    for (NodeId v = 0; v < n; ++v) points.insert(points.end(), d, v);
    std::shuffle(points.begin(), points.end(), rng);
    std::vector<std::pair<NodeId, NodeId>> pairs;
    bool ok = true;
    for (std::size_t i = 0; i < points.size() && ok; i += 2) {
      NodeId u = std::min(points[i], points[i + 1]);
      NodeId v = std::max(points[i], points[i + 1]);
      ok = u != v;
      pairs.emplace_back(u, v);
    }
    if (!ok) continue;
    std::sort(pairs.begin(), pairs.end());
    if (std::adjacent_find(pairs.begin(), pairs.end()) != pairs.end()) continue;
    GraphBuilder b(n);
    for (auto [u, v] : pairs) b.add_edge(u, v);
    return std::move(b).build();
  }
  fail(ErrorKind::kInvalidArgument, "random-regular: no simple pairing found");
}

inline NodeId default_blob(NodeId base) {
  return static_cast<NodeId>(std::ceil(10.0 * std::sqrt(static_cast<double>(base)) - 1e-9));
}

// K_base with every node replaced by a blob-clique; the base edges at a node
// are spread round-robin over its blob.
inline Graph clique_of_cliques(NodeId base, NodeId blob = 0) {
  require(base >= 1, "clique-of-cliques: base size must be positive");
  if (blob <= 0) blob = default_blob(base);
  const NodeId n = base * blob;
  GraphBuilder b(n);
  for (NodeId c = 0; c < base; ++c) {
    for (NodeId u = 0; u < blob; ++u) {
      for (NodeId v = u + 1; v < blob; ++v) b.add_edge(c * blob + u, c * blob + v);
    }
  }
  std::vector<NodeId> used(base, 0);
  for (NodeId x = 0; x < base; ++x) {
    for (NodeId y = x + 1; y < base; ++y) {
      b.add_edge(x * blob + used[x]++ % blob, y * blob + used[y]++ % blob);
    }
  }
  return std::move(b).build();
}

// Weighted cycle v_1..v_n (ids 0..n-1): w(v_i, v_{i+1}) = eps*n*scale for
// even i, n*scale for odd i, and w(v_1, v_n) = eps*n*scale - 1.
inline Graph alt_cycle(NodeId n, Weight scale = 10, Rational eps = Rational(2, 5)) {
  require(n >= 4, "alt-cycle: n must be at least 4");
  require(scale >= 1, "alt-cycle: scale must be positive");
  Rational light = eps * Rational(n) * Rational(scale);
  require(light.den() == 1 && light.num() >= 2, "alt-cycle: eps * n * scale must be an integer >= 2");
  GraphBuilder b(n);
  for (NodeId i = 1; i < n; ++i) b.add_edge(i - 1, i, i % 2 == 0 ? light.num() : static_cast<Weight>(n) * scale);
  b.add_edge(0, n - 1, light.num() - 1);
  return std::move(b).build();
}

// Side {v_1..v_i} of the friendly minimum v_i,v_{i+1}-cut, for even i.
inline std::vector<NodeId> alt_cycle_arc(NodeId i) {
  std::vector<NodeId> side(i);
  for (NodeId k = 0; k < i; ++k) side[k] = k;
  return side;
}

struct Params {
  NodeId n = 10;
  double p = 0.5;
  NodeId d = 3;
  NodeId blob = 0;
  Weight scale = 10;
  std::uint64_t seed = 1;
};

inline const std::vector<std::string>& families() {
  static const std::vector<std::string> names{"clique", "clique-of-cliques", "alt-cycle", "gnp",
                                              "path",   "star",              "dumbbell",  "random-regular"};
  return names;
}

// For clique-of-cliques, n is the base clique size; for dumbbell, the size of
// each clique.
inline Graph generate(const std::string& family, const Params& p) {
  if (family == "clique") return clique(p.n);
  if (family == "clique-of-cliques") return clique_of_cliques(p.n, p.blob);
  if (family == "alt-cycle") return alt_cycle(p.n, p.scale);
  if (family == "gnp") return gnp(p.n, p.p, p.seed);
  if (family == "path") return path(p.n);
  if (family == "star") return star(p.n);
  if (family == "dumbbell") return dumbbell(p.n);
  if (family == "random-regular") return random_regular(p.n, p.d, p.seed);
  fail(ErrorKind::kInvalidArgument, "unknown family '" + family + "'");
}

}  // namespace fcs::gen

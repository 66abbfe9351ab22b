#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "fcs/error.hpp"
#include "fcs/graph.hpp"
#include "fcs/rational.hpp"

namespace fcs {

// Per-node non-negative rational demand, stored as integer numerators over
// one shared denominator.
struct DemandVector {
  std::vector<Weight> numer;
  Weight denom = 1;

  static DemandVector uniform(NodeId n, Rational value) {
    require(!value.is_infinite() && value >= Rational(0), "demand: must be finite and non-negative");
    return {std::vector<Weight>(n, value.num()), value.den()};
  }

  NodeId size() const { return static_cast<NodeId>(numer.size()); }
  Rational at(NodeId v) const { return Rational(numer[v], denom); }

  Rational total(std::span<const NodeId> s) const {
    Weight sum = 0;
    for (NodeId v : s) sum += numer[v];
    return Rational(sum, denom);
  }

  void validate(NodeId n) const {
    require(denom > 0, "demand: denominator must be positive");
    require(size() == n, "demand: vector length does not match node count");
    for (Weight x : numer) require(x >= 0, "demand: negative entry");
  }
};

// Phi(S) = delta(S) / min(vol(S), vol(V \ S)), volumes including extra volume.
// Zero denominator yields Rational::infinity(); a single-node graph has
// conductance 1 by convention.
inline Rational conductance(const Graph& g, std::span<const NodeId> s) {
  if (g.node_count() == 1) return Rational(1);
  Cut cut = make_cut(g, s);
  Weight vs = volume(g, cut.side);
  Weight vr = volume(g, complement(g.node_count(), cut.side));
  Weight denom = std::min(vs, vr);
  if (denom == 0) return Rational::infinity();
  return Rational(cut.value, denom);
}

inline Rational demand_conductance(const Graph& g, const DemandVector& d, std::span<const NodeId> s) {
  d.validate(g.node_count());
  if (g.node_count() == 1) return Rational(1);
  Cut cut = make_cut(g, s);
  Rational ds = d.total(cut.side);
  Rational dr = d.total(complement(g.node_count(), cut.side));
  Rational denom = std::min(ds, dr);
  if (denom == Rational(0)) return Rational::infinity();
  return Rational(cut.value) / denom;
}

enum class Certificate { kExact, kSampled, kNone };

struct Decomposition {
  std::vector<std::vector<NodeId>> clusters;
  std::vector<NodeId> cluster_of;
  Rational phi;
  Weight outer_edges = 0;
  std::vector<Certificate> certificate;

  std::size_t size() const { return clusters.size(); }
  bool certified(std::size_t i) const { return certificate[i] != Certificate::kNone; }
};

struct DecomposeOptions {
  NodeId exact_limit = 15;   // clusters up to this size are searched exhaustively
  std::uint64_t seed = 1;
  int power_iterations = 60;
  int ball_restarts = 4;
  int improvement_passes = 8;
};

struct CertifyResult {
  bool passed = true;
  std::vector<NodeId> witness;  // internal cut side when !passed
  Rational witness_conductance = Rational::infinity();
};

enum class CertifyMode { kExact, kSampled };

namespace detail {

// A cluster C of g viewed as G{C}: internal edges plus a per-node mass that
// plays the role of volume. Without demands mass(v) = deg_G(v) + extra(v); with
// demands d, mass(v) = d(v) + w(E(v, V \ C)) (scaled by d.denom).
struct ClusterView {
  std::vector<NodeId> nodes;
  std::vector<std::vector<Arc>> adj;  // local ids
  std::vector<Weight> internal_degree;
  std::vector<Weight> mass;
  Weight mass_total = 0;
  Weight mass_scale = 1;

  NodeId size() const { return static_cast<NodeId>(nodes.size()); }
};

inline ClusterView make_view(const Graph& g, std::span<const NodeId> cluster, const DemandVector* d) {
  ClusterView view;
  view.nodes.assign(cluster.begin(), cluster.end());
  std::sort(view.nodes.begin(), view.nodes.end());
  const NodeId k = view.size();
  std::vector<NodeId> local(g.node_count(), -1);
  for (NodeId i = 0; i < k; ++i) local[view.nodes[i]] = i;
  view.adj.assign(k, {});
  view.internal_degree.assign(k, 0);
  view.mass.assign(k, 0);
  view.mass_scale = d != nullptr ? d->denom : 1;
  for (NodeId i = 0; i < k; ++i) {
    NodeId v = view.nodes[i];
    Weight boundary = 0;
    for (const Arc& a : g.neighbors(v)) {
      if (local[a.to] >= 0) {
        view.adj[i].push_back({local[a.to], a.w});
        view.internal_degree[i] += a.w;
      } else {
        boundary += a.w;
      }
    }
    view.mass[i] = d != nullptr ? d->numer[v] + boundary * d->denom : g.degree(v) + g.extra_volume(v);
    view.mass_total += view.mass[i];
  }
  return view;
}

// Candidate internal cut with value delta and smaller-side mass.
struct CutScore {
  Weight delta = 0;
  Weight min_mass = 0;

  bool finite() const { return min_mass > 0; }

  // Strictly smaller conductance than other.
  bool better_than(const CutScore& other) const {
    if (!finite()) return false;
    if (!other.finite()) return true;
    return static_cast<__int128>(delta) * other.min_mass < static_cast<__int128>(other.delta) * min_mass;
  }

  bool below(const Rational& phi, Weight scale) const {
    if (!finite()) return false;
    return static_cast<__int128>(delta) * scale * phi.den() < static_cast<__int128>(phi.num()) * min_mass;
  }

  Rational conductance(Weight scale) const {
    if (!finite()) return Rational::infinity();
    return Rational(delta) * Rational(scale) / Rational(min_mass);
  }
};

struct FoundCut {
  std::vector<char> side;  // local membership
  CutScore score;
};

inline CutScore score_of(const ClusterView& view, Weight delta, Weight side_mass) {
  return {delta, std::min(side_mass, view.mass_total - side_mass)};
}

// Minimum-conductance internal cut by exhaustive Gray-code enumeration.
inline std::optional<FoundCut> exact_search(const ClusterView& view) {
  const NodeId k = view.size();
  if (k < 2) return std::nullopt;
  std::vector<char> in(k, 0);
  in[0] = 1;
  Weight delta = view.internal_degree[0];
  Weight side_mass = view.mass[0];
  std::optional<FoundCut> best;
  std::uint32_t mask = 1;
  std::uint32_t best_mask = 0;
  CutScore best_score{0, 0};
  const std::uint32_t full = (std::uint32_t{1} << k) - 1;
  auto consider = [&] {
    CutScore s = score_of(view, delta, side_mass);
    if (best_mask == 0 || s.better_than(best_score)) {
      best_mask = mask;
      best_score = s;
    }
  };
  consider();
  const std::uint64_t steps = std::uint64_t{1} << (k - 1);
  for (std::uint64_t i = 1; i < steps; ++i) {
    NodeId x = static_cast<NodeId>(std::countr_zero(i)) + 1;
    for (const Arc& a : view.adj[x]) delta += in[a.to] == in[x] ? a.w : -a.w;
    side_mass += in[x] ? -view.mass[x] : view.mass[x];
    in[x] ^= 1;
    mask ^= std::uint32_t{1} << x;
    if (mask != full) consider();
  }
  FoundCut out;
  out.side.assign(k, 0);
  for (NodeId i = 0; i < k; ++i) out.side[i] = (best_mask >> i) & 1u;
  out.score = best_score;
  return out;
}

// Best prefix cut of an ordering.
inline void sweep(const ClusterView& view, std::span<const NodeId> order, std::optional<FoundCut>& best) {
  const NodeId k = view.size();
  std::vector<char> in(k, 0);
  Weight delta = 0;
  Weight side_mass = 0;
  NodeId best_prefix = -1;
  CutScore best_score{0, 0};
  for (NodeId i = 0; i + 1 < k; ++i) {
    NodeId v = order[i];
    Weight to_side = 0;
    for (const Arc& a : view.adj[v]) {
      if (in[a.to]) to_side += a.w;
    }
    delta += view.internal_degree[v] - 2 * to_side;
    side_mass += view.mass[v];
    in[v] = 1;
    CutScore s = score_of(view, delta, side_mass);
    if (best_prefix < 0 || s.better_than(best_score)) {
      best_prefix = i;
      best_score = s;
    }
  }
  if (best_prefix < 0) return;
  if (!best || best_score.better_than(best->score)) {
    FoundCut cut;
    cut.side.assign(k, 0);
    for (NodeId i = 0; i <= best_prefix; ++i) cut.side[order[i]] = 1;
    cut.score = best_score;
    best = std::move(cut);
  }
}

inline std::vector<NodeId> spectral_order(const ClusterView& view, int iterations, std::mt19937_64& rng) {
  const NodeId k = view.size();
  std::vector<double> root(k);
  double norm = 0;
  for (NodeId i = 0; i < k; ++i) {
    root[i] = std::sqrt(static_cast<double>(view.internal_degree[i]));
    norm += root[i] * root[i];
  }
  norm = std::sqrt(norm);
  std::vector<double> top(k);
  for (NodeId i = 0; i < k; ++i) top[i] = root[i] / norm;
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  std::vector<double> x(k);
  std::vector<double> y(k);
  for (double& xi : x) xi = uni(rng);
  for (int it = 0; it < iterations; ++it) {
    double dot = 0;
    for (NodeId i = 0; i < k; ++i) dot += x[i] * top[i];
    for (NodeId i = 0; i < k; ++i) x[i] -= dot * top[i];
    for (NodeId i = 0; i < k; ++i) {
      double acc = 0;
      for (const Arc& a : view.adj[i]) acc += static_cast<double>(a.w) * x[a.to] / (root[i] * root[a.to]);
      y[i] = 0.5 * (x[i] + acc);
    }
    double len = 0;
    for (double yi : y) len += yi * yi;
    len = std::sqrt(len);
    if (len == 0) break;
    for (NodeId i = 0; i < k; ++i) x[i] = y[i] / len;
  }
  std::vector<NodeId> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> key(k);
  for (NodeId i = 0; i < k; ++i) key[i] = x[i] / root[i];
  std::stable_sort(order.begin(), order.end(), [&](NodeId a, NodeId b) { return key[a] < key[b]; });
  return order;
}

inline std::vector<NodeId> ball_order(const ClusterView& view, NodeId start, std::mt19937_64& rng) {
  const NodeId k = view.size();
  std::vector<NodeId> order{start};
  std::vector<char> seen(k, 0);
  seen[start] = 1;
  for (std::size_t i = 0; i < order.size(); ++i) {
    std::vector<NodeId> next;
    for (const Arc& a : view.adj[order[i]]) {
      if (!seen[a.to]) {
        seen[a.to] = 1;
        next.push_back(a.to);
      }
    }
    std::shuffle(next.begin(), next.end(), rng);
    order.insert(order.end(), next.begin(), next.end());
  }
  return order;
}

// Greedy single-node moves while conductance strictly improves.
inline void improve(const ClusterView& view, FoundCut& cut, int passes, std::mt19937_64& rng) {
  const NodeId k = view.size();
  Weight side_mass = 0;
  NodeId side_count = 0;
  for (NodeId i = 0; i < k; ++i) {
    if (cut.side[i]) {
      side_mass += view.mass[i];
      ++side_count;
    }
  }
  std::vector<NodeId> order(k);
  std::iota(order.begin(), order.end(), 0);
  for (int pass = 0; pass < passes; ++pass) {
    bool moved = false;
    std::shuffle(order.begin(), order.end(), rng);
    for (NodeId v : order) {
      bool inside = cut.side[v];
      if (inside ? side_count == 1 : side_count == k - 1) continue;
      Weight own = 0;
      Weight other = 0;
      for (const Arc& a : view.adj[v]) (cut.side[a.to] == cut.side[v] ? own : other) += a.w;
      Weight delta = cut.score.delta + own - other;
      Weight mass = side_mass + (inside ? -view.mass[v] : view.mass[v]);
      CutScore s = score_of(view, delta, mass);
      if (s.better_than(cut.score)) {
        cut.side[v] ^= 1;
        cut.score = s;
        side_mass = mass;
        side_count += inside ? -1 : 1;
        moved = true;
      }
    }
    if (!moved) break;
  }
}

inline std::uint64_t cluster_seed(std::uint64_t seed, std::span<const NodeId> nodes) {
  std::uint64_t h = seed ^ 0x9e3779b97f4a7c15ULL;
  for (NodeId v : nodes) {
    h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

// Randomized spectral sweep + BFS-ball sweeps + local improvement.
inline std::optional<FoundCut> heuristic_search(const ClusterView& view, const DecomposeOptions& opt,
                                                std::uint64_t seed) {
  if (view.size() < 2) return std::nullopt;
  std::mt19937_64 rng(seed);
  std::optional<FoundCut> best;
  sweep(view, spectral_order(view, opt.power_iterations, rng), best);
  std::uniform_int_distribution<NodeId> pick(0, view.size() - 1);
  for (int r = 0; r < opt.ball_restarts; ++r) sweep(view, ball_order(view, pick(rng), rng), best);
  if (best) improve(view, *best, opt.improvement_passes, rng);
  return best;
}

inline std::vector<NodeId> to_global(const ClusterView& view, const std::vector<char>& side, bool value) {
  std::vector<NodeId> out;
  for (NodeId i = 0; i < view.size(); ++i) {
    if (static_cast<bool>(side[i]) == value) out.push_back(view.nodes[i]);
  }
  return out;
}

// Connected pieces of G[cluster], in global ids.
inline std::vector<std::vector<NodeId>> split_components(const ClusterView& view) {
  const NodeId k = view.size();
  std::vector<NodeId> label(k, -1);
  std::vector<std::vector<NodeId>> out;
  for (NodeId s = 0; s < k; ++s) {
    if (label[s] >= 0) continue;
    std::vector<NodeId> piece{s};
    label[s] = static_cast<NodeId>(out.size());
    for (std::size_t i = 0; i < piece.size(); ++i) {
      for (const Arc& a : view.adj[piece[i]]) {
        if (label[a.to] < 0) {
          label[a.to] = label[s];
          piece.push_back(a.to);
        }
      }
    }
    for (NodeId& v : piece) v = view.nodes[v];
    std::sort(piece.begin(), piece.end());
    out.push_back(std::move(piece));
  }
  return out;
}

inline void check_cluster(const Graph& g, std::span<const NodeId> cluster) {
  std::vector<char> seen(g.node_count(), 0);
  for (NodeId v : cluster) {
    require(g.contains(v), "cluster: node id out of range");
    require(!seen[v], "cluster: duplicate node id");
    seen[v] = 1;
  }
}

}  // namespace detail

// Conductance of an internal cut of `cluster` under the cluster mass model
// (G{C} volumes, or boundary-augmented demands when d is given).
inline Rational cluster_conductance(const Graph& g, std::span<const NodeId> cluster,
                                    std::span<const NodeId> side, const DemandVector* d = nullptr) {
  detail::check_cluster(g, cluster);
  if (d != nullptr) d->validate(g.node_count());
  detail::ClusterView view = detail::make_view(g, cluster, d);
  std::vector<NodeId> local(g.node_count(), -1);
  for (NodeId i = 0; i < view.size(); ++i) local[view.nodes[i]] = i;
  std::vector<char> in(view.size(), 0);
  Weight side_mass = 0;
  for (NodeId v : side) {
    require(g.contains(v) && local[v] >= 0, "cluster_conductance: side node outside cluster");
    if (!in[local[v]]) {
      in[local[v]] = 1;
      side_mass += view.mass[local[v]];
    }
  }
  Weight delta = 0;
  for (NodeId i = 0; i < view.size(); ++i) {
    for (const Arc& a : view.adj[i]) {
      if (in[i] && !in[a.to]) delta += a.w;
    }
  }
  return detail::score_of(view, delta, side_mass).conductance(view.mass_scale);
}

// Checks that no internal cut of the cluster has conductance below phi.
inline CertifyResult certify_cluster(const Graph& g, std::span<const NodeId> cluster, const Rational& phi,
                                     const DemandVector* d, CertifyMode mode,
                                     const DecomposeOptions& opt = {}) {
  detail::check_cluster(g, cluster);
  if (d != nullptr) d->validate(g.node_count());
  CertifyResult r;
  if (cluster.size() <= 1) return r;
  detail::ClusterView view = detail::make_view(g, cluster, d);
  std::optional<detail::FoundCut> cut;
  if (mode == CertifyMode::kExact) {
    if (view.size() > opt.exact_limit) {
      fail(ErrorKind::kGuard, "certify_cluster: exact mode limited to " +
                                  std::to_string(opt.exact_limit) + " nodes");
    }
    cut = detail::exact_search(view);
  } else {
    for (auto& piece : detail::split_components(view)) {
      if (piece.size() == view.nodes.size()) break;
      // Disconnected cluster: a component cut is a zero-value witness.
      std::vector<char> side(view.size(), 0);
      std::vector<NodeId> local(g.node_count(), -1);
      for (NodeId i = 0; i < view.size(); ++i) local[view.nodes[i]] = i;
      Weight m = 0;
      for (NodeId v : piece) {
        side[local[v]] = 1;
        m += view.mass[local[v]];
      }
      cut = detail::FoundCut{side, detail::score_of(view, 0, m)};
      break;
    }
    if (!cut) cut = detail::heuristic_search(view, opt, detail::cluster_seed(opt.seed ^ 0x5bd1e995ULL, view.nodes));
  }
  if (cut && cut->score.below(phi, view.mass_scale)) {
    r.passed = false;
    r.witness = detail::to_global(view, cut->side, true);
    r.witness_conductance = cut->score.conductance(view.mass_scale);
  }
  return r;
}

// Practical (phi, d)-expander decomposition: recursively split clusters along
// the lowest-conductance cut found (exhaustive for small clusters, spectral
// and local search otherwise) until no cut below phi is found.
inline Decomposition decompose(const Graph& g, const Rational& phi, const DemandVector* d = nullptr,
                               const DecomposeOptions& opt = {}) {
  require(!phi.is_infinite() && phi > Rational(0) && phi <= Rational(1), "decompose: phi must lie in (0, 1]");
  require(opt.exact_limit >= 1 && opt.exact_limit <= 25, "decompose: exact limit must lie in [1, 25]");
  if (d != nullptr) d->validate(g.node_count());
  Decomposition out;
  out.phi = phi;
  out.cluster_of.assign(g.node_count(), -1);

  std::vector<std::vector<NodeId>> work;
  if (g.node_count() > 0) {
    std::vector<NodeId> all(g.node_count());
    std::iota(all.begin(), all.end(), 0);
    work.push_back(std::move(all));
  }
  auto finish = [&](std::vector<NodeId> cluster, Certificate cert) {
    for (NodeId v : cluster) out.cluster_of[v] = static_cast<NodeId>(out.clusters.size());
    out.clusters.push_back(std::move(cluster));
    out.certificate.push_back(cert);
  };

  while (!work.empty()) {
    std::vector<NodeId> cluster = std::move(work.back());
    work.pop_back();
    if (cluster.size() == 1) {
      finish(std::move(cluster), Certificate::kExact);
      continue;
    }
    detail::ClusterView view = detail::make_view(g, cluster, d);
    auto pieces = detail::split_components(view);
    if (pieces.size() > 1) {
      for (auto& p : pieces) work.push_back(std::move(p));
      continue;
    }
    const bool small = view.size() <= opt.exact_limit;
    std::optional<detail::FoundCut> cut =
        small ? detail::exact_search(view)
              : detail::heuristic_search(view, opt, detail::cluster_seed(opt.seed, view.nodes));
    if (cut && cut->score.below(phi, view.mass_scale)) {
      work.push_back(detail::to_global(view, cut->side, false));
      work.push_back(detail::to_global(view, cut->side, true));
      continue;
    }
    Certificate cert = Certificate::kExact;
    if (!small) {
      CertifyResult check = certify_cluster(g, cluster, phi, d, CertifyMode::kSampled, opt);
      cert = check.passed ? Certificate::kSampled : Certificate::kNone;
    }
    finish(std::move(cluster), cert);
  }

  for (const Edge& e : g.edges()) {
    if (out.cluster_of[e.u] != out.cluster_of[e.v]) out.outer_edges += e.w;
  }
  return out;
}

// Exact expansion min_S Phi_G(S) (n <= 20); 1 for a single node.
inline Rational expansion(const Graph& g) {
  require(g.node_count() >= 1, "expansion: empty graph");
  if (g.node_count() > 20) fail(ErrorKind::kGuard, "expansion: n exceeds 20");
  if (g.node_count() == 1) return Rational(1);
  std::vector<NodeId> all(g.node_count());
  std::iota(all.begin(), all.end(), 0);
  detail::ClusterView view = detail::make_view(g, all, nullptr);
  auto cut = detail::exact_search(view);
  return cut->score.conductance(1);
}

}  // namespace fcs

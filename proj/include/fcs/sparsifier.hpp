#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fcs/error.hpp"
#include "fcs/expander.hpp"
#include "fcs/graph.hpp"
#include "fcs/maxflow.hpp"
#include "fcs/oracle.hpp"
#include "fcs/rational.hpp"

namespace fcs {

struct SparsifyConfig {
  std::optional<Rational> phi;          // default depends on the variant
  Weight low_degree_factor = 10;        // shave if deg < f * sqrt(w)
  Rational outside_fraction{1, 10};     // shave if more than this fraction leaves the cluster
  Weight budget_factor = 0;             // K for the iterative size budget; 0 means 100 * B
  std::uint64_t seed = 1;
  DecomposeOptions decompose;

  void validate() const {
    if (phi) require(!phi->is_infinite() && *phi > Rational(0) && *phi <= Rational(1), "sparsify: phi must lie in (0, 1]");
    require(low_degree_factor > 0, "sparsify: low-degree factor must be positive");
    require(outside_fraction >= Rational(0) && outside_fraction < Rational(2, 5),
            "sparsify: outside fraction must lie in [0, 0.4)");
    // Preservation needs (0.4 - q) * f > 1.
    require((Rational(2, 5) - outside_fraction) * Rational(low_degree_factor) > Rational(1),
            "sparsify: (0.4 - outside_fraction) * low_degree_factor must exceed 1");
    require(budget_factor >= 0, "sparsify: budget factor must be non-negative");
  }
};

struct IterationRecord {
  int j = 0;
  Rational w_j;
  NodeId super_nodes = 0;
  Weight edges = 0;        // weighted edge count of G_j
  Weight outer_edges = 0;  // inter-cluster weight of the decomposition of G_{j-1}
  std::size_t clusters = 0;
  std::size_t uncertified = 0;
};

struct SparsifyTrace {
  Rational phi;
  Weight budget = 0;  // K
  std::vector<IterationRecord> iterations;

  Weight outer_edges() const {
    Weight total = 0;
    for (const auto& it : iterations) total += it.outer_edges;
    return total;
  }
};

namespace detail {

inline void require_simple(const Graph& g, const char* what) {
  require(g.is_simple(), std::string(what) + ": input graph must be simple (unit weights, no parallel edges)");
}

inline Weight isqrt_ceil(Weight x) {
  Weight r = static_cast<Weight>(std::sqrt(static_cast<long double>(x)));
  while (r > 0 && (r - 1) * (r - 1) >= x) --r;
  while (r * r < x) ++r;
  return r;
}

inline Weight ceil_log2_cubed(NodeId n) {
  long double l = std::log2(static_cast<long double>(std::max<NodeId>(n, 2)));
  return std::max<Weight>(1, static_cast<Weight>(std::ceil(l * l * l - 1e-12L)));
}

inline Rational oneshot_phi(NodeId n) {
  long double l = std::log2(static_cast<long double>(std::max<NodeId>(n, 2)));
  Weight inv = static_cast<Weight>(std::ceil(std::pow(2.0L, std::sqrt(l)) - 1e-12L));
  return Rational(1, std::max<Weight>(inv, 1));
}

inline Weight max_degree(const Graph& g) {
  Weight d = 0;
  for (Weight x : g.degrees()) d = std::max(d, x);
  return d;
}

// Weight from each node to nodes outside its own cluster.
inline std::vector<Weight> outside_weights(const Graph& g, const Decomposition& dec) {
  std::vector<Weight> out(g.node_count(), 0);
  for (const Edge& e : g.edges()) {
    if (dec.cluster_of[e.u] != dec.cluster_of[e.v]) {
      out[e.u] += e.w;
      out[e.v] += e.w;
    }
  }
  return out;
}

// Contract the kept nodes of every certified cluster per connected piece;
// shaved nodes and uncertified clusters stay as singletons.
inline ContractionMap shaved_contraction(const Graph& g, const Decomposition& dec, const std::vector<char>& shaved) {
  const NodeId n = g.node_count();
  std::vector<NodeId> label(n);
  for (NodeId v = 0; v < n; ++v) {
    NodeId c = dec.cluster_of[v];
    label[v] = (!shaved[v] && dec.certified(c)) ? c : static_cast<NodeId>(dec.size()) + v;
  }
  return refine_connected(g, ContractionMap::from_labels(label));
}

inline Sparsifier compose(const Sparsifier& base, const ContractionMap& next) {
  Sparsifier out;
  out.graph = contract(base.graph, next);
  out.map = base.map.then(next);
  out.base_degrees = base.base_degrees;
  return out;
}

// One decomposition + shave + contract round with per-node demands.
inline Sparsifier demand_round(const Graph& g, Weight w, const Rational& phi, const DemandVector& d,
                               const SparsifyConfig& cfg, SparsifyTrace* trace) {
  DecomposeOptions opt = cfg.decompose;
  opt.seed = cfg.seed;
  Decomposition dec = decompose(g, phi, &d, opt);
  std::vector<Weight> out = outside_weights(g, dec);
  const Weight f = cfg.low_degree_factor;
  const Rational& q = cfg.outside_fraction;
  std::vector<char> shaved(g.node_count(), 0);
  for (NodeId v = 0; v < g.node_count(); ++v) {
    __int128 deg = g.degree(v);
    bool low = deg * deg < static_cast<__int128>(f) * f * w;
    bool leaky = static_cast<__int128>(out[v]) * q.den() > static_cast<__int128>(q.num()) * deg;
    shaved[v] = low || leaky;
  }
  Sparsifier h = Sparsifier::from_map(g, shaved_contraction(g, dec, shaved));
  if (trace != nullptr) {
    IterationRecord rec;
    rec.j = 1;
    rec.w_j = Rational(w);
    rec.super_nodes = h.graph.node_count();
    rec.edges = h.graph.total_weight();
    rec.outer_edges = dec.outer_edges;
    rec.clusters = dec.size();
    for (std::size_t i = 0; i < dec.size(); ++i) rec.uncertified += !dec.certified(i);
    trace->iterations.push_back(rec);
  }
  return h;
}

inline void start_trace(SparsifyTrace* trace, const Rational& phi) {
  if (trace == nullptr) return;
  trace->phi = phi;
  trace->budget = 0;
  trace->iterations.clear();
}

}  // namespace detail

// Single-round friendly w-cut sparsifier: (phi, d)-expander decomposition
// with d(v) = phi^-1 * ceil(sqrt w), shave, contract.
inline Sparsifier friendly_sparsify_oneshot(const Graph& g, Weight w, const SparsifyConfig& cfg = {},
                                            SparsifyTrace* trace = nullptr) {
  detail::require_simple(g, "friendly_sparsify_oneshot");
  cfg.validate();
  w = std::max<Weight>(w, 1);
  const NodeId n = g.node_count();
  Rational phi = cfg.phi.value_or(detail::oneshot_phi(n));
  detail::start_trace(trace, phi);
  if (n <= 1 || w >= static_cast<Weight>(n) * detail::max_degree(g)) return Sparsifier::identity(g);
  Weight root = detail::isqrt_ceil(w);
  DemandVector d{std::vector<Weight>(n, phi.den() * root), phi.num()};
  return detail::demand_round(g, w, phi, d, cfg, trace);
}

// Terminal minimum s,t-cut w-sparsifier: terminals get demand 3 phi^-1 w.
inline Sparsifier terminal_sparsify(const Graph& g, std::span<const NodeId> terminals, Weight w,
                                    const SparsifyConfig& cfg = {}, SparsifyTrace* trace = nullptr) {
  detail::require_simple(g, "terminal_sparsify");
  cfg.validate();
  std::vector<NodeId> t = normalize_subset(g, terminals);
  require(!t.empty(), "terminal_sparsify: terminal set is empty");
  w = std::max<Weight>(w, 1);
  const NodeId n = g.node_count();
  Rational phi = cfg.phi.value_or(detail::oneshot_phi(n));
  detail::start_trace(trace, phi);
  if (n <= 1 || w >= static_cast<Weight>(n) * detail::max_degree(g)) return Sparsifier::identity(g);
  Weight root = detail::isqrt_ceil(w);
  DemandVector d{std::vector<Weight>(n, phi.den() * root), phi.num()};
  for (NodeId v : t) d.numer[v] = 3 * phi.den() * w;
  return detail::demand_round(g, w, phi, d, cfg, trace);
}

// Iterative friendly w-cut sparsifier over w_j = (m/n)^2 / 4^j while w_j >= w.
inline Sparsifier friendly_sparsify(const Graph& g, Weight w, const SparsifyConfig& cfg = {},
                                    SparsifyTrace* trace = nullptr) {
  detail::require_simple(g, "friendly_sparsify");
  cfg.validate();
  w = std::max<Weight>(w, 1);
  const NodeId n = g.node_count();
  const Weight m = g.total_weight();
  const Weight big_b = detail::ceil_log2_cubed(n);
  Rational phi = cfg.phi.value_or(Rational(1, 100 * big_b));
  if (trace != nullptr) {
    trace->phi = phi;
    trace->budget = cfg.budget_factor > 0 ? cfg.budget_factor : 100 * big_b;
    trace->iterations.clear();
  }
  Sparsifier current = Sparsifier::identity(g);
  if (n <= 1 || m == 0) return current;

  const Weight f = cfg.low_degree_factor;
  const Rational& q = cfg.outside_fraction;
  // (0.4 - q) = q_gap / (5 q.den)
  const __int128 q_gap = 2 * static_cast<__int128>(q.den()) - 5 * static_cast<__int128>(q.num());
  const __int128 mm = static_cast<__int128>(m) * m;
  const __int128 nn = static_cast<__int128>(n) * n;

  for (int j = 1;; ++j) {
    if (2 * j >= 120) break;
    const __int128 four_j = static_cast<__int128>(1) << (2 * j);
    if (mm < static_cast<__int128>(w) * nn * four_j) break;  // w_j < w
    const __int128 scale = static_cast<__int128>(n) << j;     // sqrt(w_j) = m / scale

    const Graph& cur = current.graph;
    const NodeId k = cur.node_count();
    std::vector<Weight> base = current.super_base_degrees();
    std::vector<NodeId> size(k);
    for (NodeId s = 0; s < k; ++s) size[s] = current.map.size_of(s);

    // Self-loop mass size * phi^-1 * sqrt(w_j), rounded up.
    GraphBuilder b(k);
    for (const Edge& e : cur.edges()) b.add_edge(e.u, e.v, e.w);
    for (NodeId s = 0; s < k; ++s) {
      __int128 num = static_cast<__int128>(size[s]) * phi.den() * m;
      __int128 den = static_cast<__int128>(phi.num()) * scale;
      __int128 mass = (num + den - 1) / den;
      require(mass < (static_cast<__int128>(1) << 62), "friendly_sparsify: self-loop mass overflow");
      if (mass > 0) b.add_extra_volume(s, static_cast<Weight>(mass));
    }
    Graph loaded = std::move(b).build();

    DecomposeOptions opt = cfg.decompose;
    opt.seed = cfg.seed * 0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(j);
    Decomposition dec = decompose(loaded, phi, nullptr, opt);
    std::vector<Weight> out = detail::outside_weights(cur, dec);

    std::vector<char> shaved(k, 0);
    for (NodeId s = 0; s < k; ++s) {
      const __int128 deg = cur.degree(s);
      const __int128 o = out[s];
      const __int128 fm_size = static_cast<__int128>(f) * m * size[s];
      bool low = deg * scale < fm_size;
      bool leaky = o * q.den() > static_cast<__int128>(q.num()) * deg;
      // deg - out - 0.6 D < (0.4 - q) f sqrt(w_j) size
      bool unfriendly_core = (5 * (deg - o) - 3 * static_cast<__int128>(base[s])) * q.den() * scale < q_gap * fm_size;
      shaved[s] = low || leaky || unfriendly_core;
    }
    current = detail::compose(current, detail::shaved_contraction(cur, dec, shaved));

    if (trace != nullptr) {
      IterationRecord rec;
      rec.j = j;
      __int128 den = nn * four_j;
      __int128 a = mm;
      __int128 c = den;
      while (c != 0) {
        __int128 t = a % c;
        a = c;
        c = t;
      }
      rec.w_j = Rational(static_cast<Weight>(mm / a), static_cast<Weight>(den / a));
      rec.super_nodes = current.graph.node_count();
      rec.edges = current.graph.total_weight();
      rec.outer_edges = dec.outer_edges;
      rec.clusters = dec.size();
      for (std::size_t i = 0; i < dec.size(); ++i) rec.uncertified += !dec.certified(i);
      trace->iterations.push_back(rec);
    }
  }
  return current;
}

struct SizeReport {
  NodeId nodes = 0;
  Weight weighted_edges = 0;
};

inline SizeReport sparsifier_size_report(const Sparsifier& h) {
  return {h.graph.node_count(), h.graph.total_weight()};
}

struct PreservationReport {
  bool passed = true;
  std::size_t checked = 0;           // friendly cuts of value <= w
  std::vector<NodeId> witness;       // g-side of a violated cut
  std::string reason;
};

// Checks every friendly cut of g with value <= w against h, using a
// precomputed cut catalog of g.
inline PreservationReport verify_friendly_preservation(const Graph& g, const Sparsifier& h, Weight w,
                                                       std::span<const oracle::CutRecord> catalog) {
  oracle::guard(g, oracle::kMaxEnumerate, "verify_friendly_preservation");
  require(h.map.original_count() == g.node_count(), "verify_friendly_preservation: sparsifier is for a different node count");
  require(h.graph.node_count() == h.map.super_count(), "verify_friendly_preservation: sparsifier graph does not match its map");
  PreservationReport r;
  const NodeId k = h.map.super_count();
  std::vector<int> state(k);
  std::vector<char> in(k);
  for (const oracle::CutRecord& c : catalog) {
    if (!c.friendly || c.value > w) continue;
    ++r.checked;
    std::fill(state.begin(), state.end(), -1);
    bool crossed = false;
    for (NodeId v = 0; v < g.node_count() && !crossed; ++v) {
      int side = static_cast<int>((c.side >> v) & 1u);
      int& st = state[h.map.super_of(v)];
      if (st < 0) {
        st = side;
      } else if (st != side) {
        crossed = true;
      }
    }
    if (crossed) {
      r.passed = false;
      r.witness = oracle::mask_to_side(c.side);
      r.reason = "cut of value " + std::to_string(c.value) + " is crossed by a contraction";
      return r;
    }
    for (NodeId s = 0; s < k; ++s) in[s] = static_cast<char>(state[s] == 1);
    Weight hv = detail::crossing(h.graph, in);
    if (hv != c.value) {
      r.passed = false;
      r.witness = oracle::mask_to_side(c.side);
      r.reason = "cut of value " + std::to_string(c.value) + " has value " + std::to_string(hv) +
                 " in the sparsifier";
      return r;
    }
  }
  return r;
}

inline PreservationReport verify_friendly_preservation(const Graph& g, const Sparsifier& h, Weight w) {
  oracle::guard(g, oracle::kMaxEnumerate, "verify_friendly_preservation");
  std::vector<oracle::CutRecord> catalog = oracle::cut_catalog(g);
  return verify_friendly_preservation(g, h, w, catalog);
}

// Every cut of value <= w that is a minimum s,t-cut for some terminal pair
// must be preserved uncrossed and with equal value.
inline PreservationReport verify_terminal_preservation(const Graph& g, const Sparsifier& h,
                                                       std::span<const NodeId> terminals, Weight w) {
  oracle::guard(g, oracle::kMaxEnumerate, "verify_terminal_preservation");
  std::vector<NodeId> t = normalize_subset(g, terminals);
  require(!t.empty(), "verify_terminal_preservation: terminal set is empty");
  std::vector<std::vector<Weight>> lambda(t.size(), std::vector<Weight>(t.size(), 0));
  for (std::size_t i = 0; i < t.size(); ++i) {
    for (std::size_t j = i + 1; j < t.size(); ++j) lambda[i][j] = lambda[j][i] = max_flow(g, t[i], t[j]).value;
  }
  std::vector<oracle::CutRecord> relevant;
  for (const oracle::CutRecord& c : oracle::cut_catalog(g)) {
    if (c.value > w) continue;
    bool minimum = false;
    for (std::size_t i = 0; i < t.size() && !minimum; ++i) {
      for (std::size_t j = i + 1; j < t.size() && !minimum; ++j) {
        bool si = (c.side >> t[i]) & 1u;
        bool sj = (c.side >> t[j]) & 1u;
        minimum = si != sj && c.value == lambda[i][j];
      }
    }
    if (minimum) relevant.push_back({c.side, c.value, true});
  }
  return verify_friendly_preservation(g, h, w, relevant);
}

// For every pair whose minimum cuts are all friendly, the super-nodes of s
// and t must differ and their minimum cut in h must equal lambda(s, t).
inline PreservationReport verify_mincut_preservation(const Graph& g, const Sparsifier& h) {
  oracle::guard(g, oracle::kMaxClassify, "verify_mincut_preservation");
  require(h.map.original_count() == g.node_count(), "verify_mincut_preservation: sparsifier is for a different node count");
  PreservationReport r;
  oracle::ClassMatrix cls = oracle::all_pairs_friendliness(g);
  for (NodeId s = 0; s < g.node_count(); ++s) {
    for (NodeId t = s + 1; t < g.node_count(); ++t) {
      if (cls[s][t].kind != oracle::MinCutKind::kAllFriendly) continue;
      ++r.checked;
      NodeId a = h.map.super_of(s);
      NodeId b = h.map.super_of(t);
      Weight hv = a == b ? -1 : max_flow(h.graph, a, b).value;
      if (hv != cls[s][t].value) {
        r.passed = false;
        r.witness = {s, t};
        r.reason = a == b ? "pair " + std::to_string(s) + "," + std::to_string(t) + " with only friendly minimum cuts was contracted"
                          : "pair " + std::to_string(s) + "," + std::to_string(t) + " has minimum cut " + std::to_string(hv) +
                                " in the sparsifier, expected " + std::to_string(cls[s][t].value);
        return r;
      }
    }
  }
  return r;
}

// Cheap checks valid at any size: the graph is the contraction of g by the map.
inline PreservationReport verify_sparsifier_structure(const Graph& g, const Sparsifier& h) {
  PreservationReport r;
  if (h.map.original_count() != g.node_count()) {
    r.passed = false;
    r.reason = "sparsifier is for a different node count";
  } else if (!(contract(g, h.map) == h.graph)) {
    r.passed = false;
    r.reason = "contracted graph does not match the contraction of the input by the map";
  }
  return r;
}

}  // namespace fcs

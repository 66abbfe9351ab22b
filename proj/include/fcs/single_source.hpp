#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "fcs/error.hpp"
#include "fcs/graph.hpp"
#include "fcs/isolating.hpp"
#include "fcs/maxflow.hpp"
#include "fcs/parallel.hpp"
#include "fcs/rational.hpp"

namespace fcs {

// Upper estimates c'(v) >= lambda(p, v), each with a witness side that
// contains v, excludes p and has value exactly c'(v).
struct EstimateTable {
  NodeId source = 0;
  std::vector<Weight> value;
  std::vector<std::vector<NodeId>> witness;

  NodeId size() const { return static_cast<NodeId>(value.size()); }

  // Keeps the smaller of the current and the offered estimate.
  bool offer(NodeId v, Weight val, std::vector<NodeId> side) {
    if (val >= value[v]) return false;
    value[v] = val;
    witness[v] = std::move(side);
    return true;
  }

  static EstimateTable unbounded(NodeId n, NodeId p) {
    EstimateTable t;
    t.source = p;
    t.value.assign(n, std::numeric_limits<Weight>::max());
    t.witness.assign(n, {});
    t.value[p] = 0;
    return t;
  }
};

// Pluggable (1 + eps)-approximate single-source estimator.
using ApproxEstimator = std::function<EstimateTable(const Graph&, NodeId, const Rational&)>;

// Checks that every witness separates v from p with the recorded value.
inline bool witnesses_valid(const Graph& g, const EstimateTable& t, std::string* why = nullptr) {
  auto bad = [&](const std::string& msg) {
    if (why != nullptr) *why = msg;
    return false;
  };
  if (t.size() != g.node_count() || !g.contains(t.source)) return bad("table size or source mismatch");
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (v == t.source) continue;
    const auto& side = t.witness[v];
    std::vector<char> in(g.node_count(), 0);
    for (NodeId u : side) {
      if (!g.contains(u)) return bad("witness of " + std::to_string(v) + " has an invalid id");
      in[u] = 1;
    }
    if (!in[v] || in[t.source]) return bad("witness of " + std::to_string(v) + " does not separate it from the source");
    if (detail::crossing(g, in) != t.value[v]) return bad("witness of " + std::to_string(v) + " has the wrong value");
  }
  return true;
}

namespace detail {

inline EstimateTable exact_single_source(const Graph& g, NodeId p, int threads) {
  EstimateTable t = EstimateTable::unbounded(g.node_count(), p);
  parallel_for(static_cast<std::size_t>(g.node_count()), threads, [&](std::size_t i) {
    NodeId v = static_cast<NodeId>(i);
    if (v == p) return;
    FlowResult f = max_flow(g, v, p);
    t.value[v] = f.value;
    t.witness[v] = std::move(f.min_source_side.side);
  });
  return t;
}

}  // namespace detail

// (1 + eps)-approximate single-source min cuts. Without a plugin this runs
// n - 1 exact max-flows.
inline EstimateTable approx_single_source(const Graph& g, NodeId p, const Rational& eps = Rational(1, 100),
                                          const ApproxEstimator& plugin = {}, int threads = 1) {
  require(g.contains(p), "approx_single_source: source out of range");
  require(!eps.is_infinite() && eps >= Rational(0), "approx_single_source: eps must be non-negative");
  if (!plugin) return detail::exact_single_source(g, p, threads);
  EstimateTable t = plugin(g, p, eps);
  std::string why;
  if (!witnesses_valid(g, t, &why)) fail(ErrorKind::kVerification, "approx_single_source: plugin estimate invalid: " + why);
  return t;
}

struct SingleSourceOptions {
  Rational eps{1, 100};
  Rational delta{1, 100};
  ApproxEstimator estimator;  // empty: exact
  int threads = 1;
};

struct LevelRecord {
  int index = 0;
  long double threshold = 0;
  NodeId terminals = 0;  // |T_i|
  bool skipped = false;  // duplicate of the previous level or fewer than two terminals
};

struct SingleSourceTrace {
  std::vector<LevelRecord> levels;
  int isolating_calls = 0;
  int global_flows = 0;
  int local_flows = 0;
};

// Single-source minimum cuts, exact for every v that has an unfriendly
// minimum p,v-cut: per threshold level (1 + delta)^i, isolate
// T_i = {v : c'(v) >= (1 + delta)^i} + {p} and lower estimates.
inline EstimateTable single_source_unfriendly(const Graph& g, NodeId p, const SingleSourceOptions& opt = {},
                                              SingleSourceTrace* trace = nullptr) {
  require(g.contains(p), "single_source_unfriendly: source out of range");
  require(!opt.delta.is_infinite() && opt.delta > Rational(0), "single_source_unfriendly: delta must be positive");
  const NodeId n = g.node_count();
  const __int128 n4 = static_cast<__int128>(n) * n * n * n;
  require(static_cast<__int128>(g.max_weight()) <= n4, "single_source_unfriendly: max weight exceeds n^4");

  EstimateTable t = approx_single_source(g, p, opt.eps, opt.estimator, opt.threads);
  if (trace != nullptr) *trace = {};
  if (n < 2) return t;

  Weight top = 0;
  for (NodeId v = 0; v < n; ++v) {
    if (v != p) top = std::max(top, t.value[v]);
  }
  const long double factor = 1.0L + static_cast<long double>(opt.delta.to_double());
  std::vector<NodeId> previous;
  long double threshold = 1.0L;
  for (int i = 0; threshold <= static_cast<long double>(top); ++i, threshold *= factor) {
    std::vector<NodeId> level;
    for (NodeId v = 0; v < n; ++v) {
      if (v == p || static_cast<long double>(t.value[v]) >= threshold) level.push_back(v);
    }
    LevelRecord rec{i, threshold, static_cast<NodeId>(level.size()), false};
    if (level.size() < 2 || level == previous) {
      rec.skipped = true;
      if (trace != nullptr) trace->levels.push_back(rec);
      continue;
    }
    previous = level;
    IsolatingCuts iso = isolating_cuts(g, level, opt.threads);
    if (trace != nullptr) {
      trace->levels.push_back(rec);
      ++trace->isolating_calls;
      trace->global_flows += iso.global_flows;
      trace->local_flows += iso.local_flows;
    }
    for (std::size_t j = 0; j < iso.terminals.size(); ++j) {
      NodeId v = iso.terminals[j];
      if (v != p) t.offer(v, iso.cuts[j].value, iso.cuts[j].side);
    }
    // The pivot's isolating cut also separates p from every node outside it.
    const Cut& sp = iso.of(p);
    std::vector<NodeId> rest = complement(n, sp.side);
    for (NodeId v : rest) t.offer(v, sp.value, rest);
  }
  return t;
}

namespace detail {

inline void require_min_cut(const Graph& g, NodeId p, NodeId v, std::span<const NodeId> s, const char* what) {
  require(g.contains(p) && g.contains(v) && p != v, std::string(what) + ": invalid p, v");
  std::vector<NodeId> side = normalize_subset(g, s);
  std::vector<char> in = membership(g.node_count(), side);
  require(in[v] && !in[p], std::string(what) + ": cut must contain v and exclude p");
  require(crossing(g, in) == max_flow(g, p, v).value, std::string(what) + ": cut is not a minimum p,v-cut");
}

}  // namespace detail

// v sends more than 0.6 of its degree across a minimum p,v-cut s; checks
// delta(s \ {v}) <= 0.8 delta(s).
inline bool lemma_unfriendly_v(const Graph& g, NodeId p, NodeId v, std::span<const NodeId> s) {
  detail::require_min_cut(g, p, v, s, "lemma_unfriendly_v");
  std::vector<NodeId> side = normalize_subset(g, s);
  require(side.size() >= 2, "lemma_unfriendly_v: degenerate cut s = {v}");
  std::vector<char> in = membership(g.node_count(), side);
  Weight across = crossing_weights(g, in)[v];
  require(sends_too_much(across, g.degree(v)), "lemma_unfriendly_v: hypothesis violated");
  Weight whole = detail::crossing(g, in);
  in[v] = 0;
  Weight reduced = detail::crossing(g, in);
  return 5 * reduced <= 4 * whole;
}

// p sends more than 0.6 of its degree into s; checks
// delta((V \ s) \ {p}) <= 0.8 delta(s).
inline bool lemma_unfriendly_p(const Graph& g, NodeId p, NodeId v, std::span<const NodeId> s) {
  detail::require_min_cut(g, p, v, s, "lemma_unfriendly_p");
  std::vector<NodeId> side = normalize_subset(g, s);
  require(static_cast<NodeId>(side.size()) + 1 < g.node_count(), "lemma_unfriendly_p: degenerate cut V \\ s = {p}");
  std::vector<char> in = membership(g.node_count(), side);
  Weight across = crossing_weights(g, in)[p];
  require(sends_too_much(across, g.degree(p)), "lemma_unfriendly_p: hypothesis violated");
  Weight whole = detail::crossing(g, in);
  in[p] = 1;
  Weight reduced = detail::crossing(g, in);
  return 5 * reduced <= 4 * whole;
}

}  // namespace fcs

#pragma once

#include <bit>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "fcs/error.hpp"
#include "fcs/graph.hpp"
#include "fcs/maxflow.hpp"
#include "fcs/parallel.hpp"

namespace fcs::oracle {

inline constexpr NodeId kMaxEnumerate = 20;
inline constexpr NodeId kMaxClassify = 16;

using Mask = std::uint32_t;

inline void guard(const Graph& g, NodeId limit, const char* what) {
  if (g.node_count() > limit) {
    fail(ErrorKind::kGuard, std::string(what) + ": n = " + std::to_string(g.node_count()) +
                                " exceeds oracle limit " + std::to_string(limit));
  }
}

inline std::vector<NodeId> mask_to_side(Mask mask) {
  std::vector<NodeId> side;
  for (NodeId v = 0; mask != 0; ++v, mask >>= 1) {
    if (mask & 1u) side.push_back(v);
  }
  return side;
}

inline Mask side_to_mask(std::span<const NodeId> side) {
  Mask m = 0;
  for (NodeId v : side) m |= Mask{1} << v;
  return m;
}

struct CutRecord {
  Mask side = 0;  // always contains node 0
  Weight value = 0;
  bool friendly = false;
};

// Visits every bipartition whose side contains node 0 (2^(n-1) - 1 of them),
// in Gray-code order, with its exact value and friendliness.
template <typename Visitor>
void for_each_cut(const Graph& g, Visitor&& visit) {
  guard(g, kMaxEnumerate, "cut enumeration");
  const NodeId n = g.node_count();
  if (n < 2) return;
  std::vector<char> in(n, 0);
  std::vector<Weight> cross(n, 0);
  in[0] = 1;
  Weight value = g.degree(0);
  cross[0] = g.degree(0);
  for (const Arc& a : g.neighbors(0)) cross[a.to] += a.w;
  int unfriendly = 0;
  for (NodeId v = 0; v < n; ++v) unfriendly += sends_too_much(cross[v], g.degree(v));

  Mask mask = 1;
  const Mask full = n == 32 ? ~Mask{0} : (Mask{1} << n) - 1;
  const std::uint64_t steps = std::uint64_t{1} << (n - 1);
  visit(CutRecord{mask, value, unfriendly == 0});
  for (std::uint64_t i = 1; i < steps; ++i) {
    NodeId x = static_cast<NodeId>(std::countr_zero(i)) + 1;
    unfriendly -= sends_too_much(cross[x], g.degree(x));
    cross[x] = g.degree(x) - cross[x];
    for (const Arc& a : g.neighbors(x)) {
      unfriendly -= sends_too_much(cross[a.to], g.degree(a.to));
      if (in[a.to] == in[x]) {
        cross[a.to] += a.w;
        value += a.w;
      } else {
        cross[a.to] -= a.w;
        value -= a.w;
      }
      unfriendly += sends_too_much(cross[a.to], g.degree(a.to));
    }
    unfriendly += sends_too_much(cross[x], g.degree(x));
    in[x] ^= 1;
    mask ^= Mask{1} << x;
    if (mask != full) visit(CutRecord{mask, value, unfriendly == 0});
  }
}

inline std::vector<CutRecord> cut_catalog(const Graph& g) {
  std::vector<CutRecord> out;
  if (g.node_count() >= 2) out.reserve((std::size_t{1} << (g.node_count() - 1)) - 1);
  for_each_cut(g, [&](const CutRecord& r) { out.push_back(r); });
  return out;
}

inline std::vector<Cut> enumerate_cuts(const Graph& g) {
  std::vector<Cut> out;
  for_each_cut(g, [&](const CutRecord& r) { out.push_back({mask_to_side(r.side), r.value}); });
  return out;
}

using CutMatrix = std::vector<std::vector<Weight>>;

// lambda[s][t] by one max-flow per unordered pair; diagonal is 0.
inline CutMatrix all_pairs_min_cut(const Graph& g, int threads = 1) {
  const NodeId n = g.node_count();
  CutMatrix lambda(n, std::vector<Weight>(n, 0));
  std::vector<std::pair<NodeId, NodeId>> pairs;
  for (NodeId s = 0; s < n; ++s) {
    for (NodeId t = s + 1; t < n; ++t) pairs.emplace_back(s, t);
  }
  parallel_for(pairs.size(), threads, [&](std::size_t i) {
    auto [s, t] = pairs[i];
    Weight v = max_flow(g, s, t).value;
    lambda[s][t] = v;
    lambda[t][s] = v;
  });
  return lambda;
}

enum class MinCutKind { kAllFriendly, kAllUnfriendly, kMixed };

inline const char* to_string(MinCutKind k) {
  switch (k) {
    case MinCutKind::kAllFriendly: return "AllFriendly";
    case MinCutKind::kAllUnfriendly: return "AllUnfriendly";
    case MinCutKind::kMixed: return "Mixed";
  }
  return "?";
}

struct MinCutClass {
  MinCutKind kind = MinCutKind::kAllFriendly;
  Weight value = 0;

  bool has_unfriendly() const { return kind != MinCutKind::kAllFriendly; }
};

namespace detail {

struct PairTally {
  Weight best = std::numeric_limits<Weight>::max();
  bool any_friendly = false;
  bool any_unfriendly = false;

  void add(Weight value, bool friendly) {
    if (value < best) {
      best = value;
      any_friendly = friendly;
      any_unfriendly = !friendly;
    } else if (value == best) {
      any_friendly |= friendly;
      any_unfriendly |= !friendly;
    }
  }

  MinCutClass result() const {
    MinCutKind k = any_friendly && any_unfriendly
                       ? MinCutKind::kMixed
                       : (any_friendly ? MinCutKind::kAllFriendly : MinCutKind::kAllUnfriendly);
    return {k, best};
  }
};

}  // namespace detail

// Classifies every minimum s,t-cut by friendliness via full enumeration.
inline MinCutClass min_cut_friendliness(const Graph& g, NodeId s, NodeId t) {
  guard(g, kMaxClassify, "min-cut friendliness");
  require(g.contains(s) && g.contains(t), "min_cut_friendliness: node id out of range");
  require(s != t, "min_cut_friendliness: s equals t");
  detail::PairTally tally;
  for_each_cut(g, [&](const CutRecord& r) {
    if (((r.side >> s) & 1u) != ((r.side >> t) & 1u)) tally.add(r.value, r.friendly);
  });
  return tally.result();
}

using ClassMatrix = std::vector<std::vector<MinCutClass>>;

// min_cut_friendliness for all pairs from one shared enumeration.
inline ClassMatrix all_pairs_friendliness(const Graph& g, std::span<const CutRecord> catalog) {
  guard(g, kMaxClassify, "min-cut friendliness");
  const NodeId n = g.node_count();
  std::vector<std::vector<detail::PairTally>> tally(n, std::vector<detail::PairTally>(n));
  for (const CutRecord& r : catalog) {
    for (NodeId s = 0; s < n; ++s) {
      if (!((r.side >> s) & 1u)) continue;
      for (NodeId t = 0; t < n; ++t) {
        if (!((r.side >> t) & 1u)) tally[s][t].add(r.value, r.friendly);
      }
    }
  }
  ClassMatrix out(n, std::vector<MinCutClass>(n));
  for (NodeId s = 0; s < n; ++s) {
    for (NodeId t = 0; t < n; ++t) {
      if (s == t) continue;
      // Each cut was tallied with s on the node-0 side; merge both orientations.
      detail::PairTally merged = tally[s][t];
      const detail::PairTally& other = tally[t][s];
      if (other.best != std::numeric_limits<Weight>::max()) {
        if (other.best < merged.best) {
          merged = other;
        } else if (other.best == merged.best) {
          merged.any_friendly |= other.any_friendly;
          merged.any_unfriendly |= other.any_unfriendly;
        }
      }
      out[s][t] = merged.result();
    }
  }
  return out;
}

inline ClassMatrix all_pairs_friendliness(const Graph& g) {
  std::vector<CutRecord> catalog = cut_catalog(g);
  return all_pairs_friendliness(g, catalog);
}

}  // namespace fcs::oracle

#pragma once

#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "fcs/error.hpp"
#include "fcs/gomory_hu.hpp"
#include "fcs/graph.hpp"
#include "fcs/io.hpp"
#include "fcs/single_source.hpp"

namespace fcs {

enum class ArtifactKind { kGHTree, kSparsifier, kSingleSource, kUnknown };

inline constexpr std::string_view kGHTreeMagic = "# fcs ghtree";
inline constexpr std::string_view kSparsifierMagic = "# fcs sparsifier";
inline constexpr std::string_view kSingleSourceMagic = "# fcs sscut";

inline ArtifactKind artifact_kind(std::string_view text) {
  std::string_view first = text.substr(0, text.find('\n'));
  while (!first.empty() && (first.back() == '\r' || first.back() == ' ')) first.remove_suffix(1);
  if (first == kGHTreeMagic) return ArtifactKind::kGHTree;
  if (first == kSparsifierMagic) return ArtifactKind::kSparsifier;
  if (first == kSingleSourceMagic) return ArtifactKind::kSingleSource;
  return ArtifactKind::kUnknown;
}

// "n c" then n - c lines "u v w".
inline std::string serialize_gh_tree(const GHTree& t) {
  std::ostringstream os;
  os << kGHTreeMagic << '\n' << t.n << ' ' << t.components << '\n';
  for (const Edge& e : t.edges) os << e.u << ' ' << e.v << ' ' << e.w << '\n';
  return os.str();
}

inline GHTree parse_gh_tree(std::string_view text) {
  detail::LineReader in(text);
  std::vector<std::string_view> tok;
  if (!in.next(tok) || tok.size() != 2) in.error("expected gh tree header 'n components'");
  auto n = in.number<std::int64_t>(tok[0]);
  auto c = in.number<std::int64_t>(tok[1]);
  if (n < 0 || n > INT32_MAX || c < 0 || c > n || (n > 0 && c == 0)) in.error("invalid gh tree header");
  std::vector<Edge> edges;
  for (std::int64_t i = 0; i < n - c; ++i) {
    if (!in.next(tok)) in.error("expected " + std::to_string(n - c) + " tree edges");
    if (tok.size() != 3) in.error("expected 'u v w'");
    auto u = in.number<std::int64_t>(tok[0]);
    auto v = in.number<std::int64_t>(tok[1]);
    auto w = in.number<Weight>(tok[2]);
    if (u < 0 || v < 0 || u >= n || v >= n || u == v) in.error("invalid tree edge endpoint");
    if (w <= 0) in.error("tree edge weight must be positive");
    edges.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v), w});
  }
  detail::expect_end(in);
  try {
    return GHTree::from_edges(static_cast<NodeId>(n), std::move(edges));
  } catch (const Error& e) {
    fail(ErrorKind::kParse, e.what());
  }
}

// "sparsifier N K", a line with the N super-node ids, then the contracted
// graph in edge-list format.
inline std::string serialize_sparsifier(const Sparsifier& h) {
  std::ostringstream os;
  os << kSparsifierMagic << '\n' << "sparsifier " << h.map.original_count() << ' ' << h.map.super_count() << '\n';
  for (NodeId v = 0; v < h.map.original_count(); ++v) os << (v ? " " : "") << h.map.super_of(v);
  os << '\n' << serialize_graph(h.graph);
  return os.str();
}

// Base degrees come from the graph the sparsifier is checked against.
inline Sparsifier parse_sparsifier(std::string_view text, const Graph& base) {
  detail::LineReader in(text);
  std::vector<std::string_view> tok;
  if (!in.next(tok) || tok.size() != 3 || tok[0] != "sparsifier") in.error("expected header 'sparsifier N K'");
  auto n = in.number<std::int64_t>(tok[1]);
  auto k = in.number<std::int64_t>(tok[2]);
  if (n < 0 || n > INT32_MAX || k < 0 || k > n) in.error("invalid sparsifier header");
  if (n != base.node_count()) {
    fail(ErrorKind::kVerification, "sparsifier covers " + std::to_string(n) + " nodes but the graph has " +
                                       std::to_string(base.node_count()));
  }
  std::vector<NodeId> super_of;
  if (n > 0) {
    if (!in.next(tok)) in.error("expected the super-node map");
    if (static_cast<std::int64_t>(tok.size()) != n) in.error("super-node map must list " + std::to_string(n) + " ids");
    for (auto t : tok) {
      auto s = in.number<std::int64_t>(t);
      if (s < 0 || s >= k) in.error("super-node id out of range");
      super_of.push_back(static_cast<NodeId>(s));
    }
  }
  Graph h = detail::read_graph(in);
  detail::expect_end(in);
  if (h.node_count() != k) in.error("contracted graph must have " + std::to_string(k) + " nodes");
  ContractionMap map;
  try {
    map = ContractionMap(std::move(super_of));
  } catch (const Error& e) {
    fail(ErrorKind::kParse, e.what());
  }
  if (map.super_count() != k) fail(ErrorKind::kParse, "super-node ids do not cover 0..K-1");
  std::vector<Weight> deg(base.degrees().begin(), base.degrees().end());
  return {std::move(h), std::move(map), std::move(deg)};
}

// "sscut n p mode" then one line "v value | side ids" per v != p.
inline std::string serialize_single_source(const EstimateTable& t, const std::string& mode) {
  std::ostringstream os;
  os << kSingleSourceMagic << '\n' << "sscut " << t.size() << ' ' << t.source << ' ' << mode << '\n';
  for (NodeId v = 0; v < t.size(); ++v) {
    if (v == t.source) continue;
    os << v << ' ' << t.value[v] << " |";
    for (NodeId u : t.witness[v]) os << ' ' << u;
    os << '\n';
  }
  return os.str();
}

struct SingleSourceArtifact {
  EstimateTable table;
  std::string mode;
};

inline SingleSourceArtifact parse_single_source(std::string_view text) {
  detail::LineReader in(text);
  std::vector<std::string_view> tok;
  if (!in.next(tok) || tok.size() != 4 || tok[0] != "sscut") in.error("expected header 'sscut n p mode'");
  auto n = in.number<std::int64_t>(tok[1]);
  auto p = in.number<std::int64_t>(tok[2]);
  if (n < 1 || n > INT32_MAX || p < 0 || p >= n) in.error("invalid sscut header");
  SingleSourceArtifact a;
  a.mode = std::string(tok[3]);
  a.table = EstimateTable::unbounded(static_cast<NodeId>(n), static_cast<NodeId>(p));
  std::vector<char> seen(n, 0);
  for (std::int64_t i = 0; i + 1 < n; ++i) {
    if (!in.next(tok)) in.error("expected " + std::to_string(n - 1) + " entries");
    if (tok.size() < 3 || tok[2] != "|") in.error("expected 'v value | side ids'");
    auto v = in.number<std::int64_t>(tok[0]);
    if (v < 0 || v >= n || v == p || seen[v]) in.error("invalid or repeated entry node");
    seen[v] = 1;
    a.table.value[v] = in.number<Weight>(tok[1]);
    for (std::size_t j = 3; j < tok.size(); ++j) {
      auto u = in.number<std::int64_t>(tok[j]);
      if (u < 0 || u >= n) in.error("side node id out of range");
      a.table.witness[v].push_back(static_cast<NodeId>(u));
    }
  }
  detail::expect_end(in);
  return a;
}

}  // namespace fcs

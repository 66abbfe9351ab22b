#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "fcs/error.hpp"
#include "fcs/graph.hpp"

namespace fcs {

namespace detail {

// Line reader that skips blank lines and '#' comments and remembers the
// 1-based line number of the last returned line.
class LineReader {
 public:
  explicit LineReader(std::string_view text) {
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t end = text.find('\n', pos);
      if (end == std::string_view::npos) end = text.size();
      lines_.push_back(text.substr(pos, end - pos));
      pos = end + 1;
    }
  }

  bool next(std::vector<std::string_view>& tokens) {
    while (index_ < lines_.size()) {
      std::string_view line = lines_[index_++];
      tokens.clear();
      split(line, tokens);
      if (!tokens.empty() && tokens.front().front() != '#') return true;
    }
    return false;
  }

  int line() const { return static_cast<int>(index_); }

  [[noreturn]] void error(const std::string& what) const {
    fail(ErrorKind::kParse, "line " + std::to_string(line()) + ": " + what);
  }

  template <typename T>
  T number(std::string_view token) const {
    T value{};
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
      error("malformed number '" + std::string(token) + "'");
    }
    return value;
  }

 private:
  static void split(std::string_view line, std::vector<std::string_view>& out) {
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
      std::size_t j = i;
      while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
      if (j > i) out.push_back(line.substr(i, j - i));
      i = j;
    }
  }

  std::vector<std::string_view> lines_;
  std::size_t index_ = 0;
};

}  // namespace detail

namespace detail {

inline Graph read_graph(LineReader& in) {
  std::vector<std::string_view> tok;
  if (!in.next(tok)) fail(ErrorKind::kParse, "empty input: expected header 'n m'");
  if (tok.size() != 2) in.error("expected header 'n m'");
  auto n = in.number<std::int64_t>(tok[0]);
  auto m = in.number<std::int64_t>(tok[1]);
  if (n < 0 || n > INT32_MAX) in.error("node count out of range");
  if (m < 0) in.error("negative edge count");
  GraphBuilder b(static_cast<NodeId>(n));
  for (std::int64_t i = 0; i < m; ++i) {
    if (!in.next(tok)) {
      fail(ErrorKind::kParse, "line " + std::to_string(in.line()) + ": expected " +
                                  std::to_string(m) + " edges, found " + std::to_string(i));
    }
    if (tok.size() != 2 && tok.size() != 3) in.error("expected 'u v [w]'");
    auto u = in.number<std::int64_t>(tok[0]);
    auto v = in.number<std::int64_t>(tok[1]);
    Weight w = tok.size() == 3 ? in.number<Weight>(tok[2]) : 1;
    if (u < 0 || v < 0 || u >= n || v >= n) in.error("node id out of range (n = " + std::to_string(n) + ")");
    if (u == v) in.error("self-loop on node " + std::to_string(u));
    if (w <= 0) in.error("non-positive weight " + std::to_string(w));
    b.add_edge(static_cast<NodeId>(u), static_cast<NodeId>(v), w);
  }
  return std::move(b).build();
}

inline void expect_end(LineReader& in) {
  std::vector<std::string_view> tok;
  if (in.next(tok)) in.error("unexpected trailing content");
}

}  // namespace detail

// Edge-list format: header "n m", then m lines "u v [w]" (0-based ids,
// weight defaults to 1). Blank lines and '#' comments are ignored.
inline Graph parse_graph(std::string_view text) {
  detail::LineReader in(text);
  Graph g = detail::read_graph(in);
  detail::expect_end(in);
  return g;
}

inline std::string serialize_graph(const Graph& g) {
  require(std::all_of(g.extra_volumes().begin(), g.extra_volumes().end(),
                      [](Weight x) { return x == 0; }),
          "serialize_graph: self-loop mass has no text representation");
  std::ostringstream os;
  os << g.node_count() << ' ' << g.edge_count() << '\n';
  for (const Edge& e : g.edges()) {
    os << e.u << ' ' << e.v;
    if (e.w != 1) os << ' ' << e.w;
    os << '\n';
  }
  return os.str();
}

// Node-subset format: one id per line.
inline std::vector<NodeId> parse_subset(std::string_view text, NodeId n) {
  detail::LineReader in(text);
  std::vector<std::string_view> tok;
  std::vector<NodeId> out;
  while (in.next(tok)) {
    if (tok.size() != 1) in.error("expected one node id per line");
    auto v = in.number<std::int64_t>(tok[0]);
    if (v < 0 || v >= n) in.error("node id out of range (n = " + std::to_string(n) + ")");
    out.push_back(static_cast<NodeId>(v));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline std::string serialize_subset(std::span<const NodeId> s) {
  std::ostringstream os;
  for (NodeId v : s) os << v << '\n';
  return os.str();
}

inline std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) fail(ErrorKind::kParse, "cannot open '" + path + "'");
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) fail(ErrorKind::kInvalidArgument, "cannot write '" + path + "'");
  f << content;
}

}  // namespace fcs

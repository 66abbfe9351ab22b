#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "fcs/error.hpp"
#include "fcs/gomory_hu.hpp"
#include "fcs/graph.hpp"
#include "fcs/sparsifier.hpp"

namespace fcs::bench {

struct Row {
  std::string family;
  NodeId n = 0;
  Weight m = 0;
  Weight w = 0;
  Weight sparsifier_edges = 0;
  double bound_nsqrtw = 0;
  double bound_nlogn = 0;
  Weight outer_edges = 0;
  double wall_ms = 0;
  std::uint64_t seed = 0;
  std::string mode;
  NodeId super_nodes = 0;
};

inline const char* kHeader =
    "family,n,m,w,sparsifier_edges,bound_nsqrtw,bound_nlogn,outer_edges,wall_ms,seed,mode,super_nodes";

inline std::string to_csv(const Row& r) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(3);
  os << r.family << ',' << r.n << ',' << r.m << ',' << r.w << ',' << r.sparsifier_edges << ',' << r.bound_nsqrtw
     << ',' << r.bound_nlogn << ',' << r.outer_edges << ',' << r.wall_ms << ',' << r.seed << ',' << r.mode << ','
     << r.super_nodes;
  return os.str();
}

// Runs one sparsifier variant (oneshot, iterative or gh-based) and measures it.
inline Row run(const std::string& family, const Graph& g, Weight w, const std::string& mode,
               const SparsifyConfig& cfg = {}) {
  Row r;
  r.family = family;
  r.n = g.node_count();
  r.m = g.total_weight();
  r.w = w;
  r.seed = cfg.seed;
  r.mode = mode;
  r.bound_nsqrtw = r.n * std::sqrt(static_cast<double>(w));
  r.bound_nlogn = r.n * std::log(static_cast<double>(std::max<NodeId>(r.n, 1)));
  auto start = std::chrono::steady_clock::now();
  Sparsifier h;
  SparsifyTrace trace;
  if (mode == "oneshot") {
    h = friendly_sparsify_oneshot(g, w, cfg, &trace);
  } else if (mode == "iterative") {
    h = friendly_sparsify(g, w, cfg, &trace);
  } else if (mode == "gh-based") {
    h = friendly_mincut_sparsifier_from_gh(g, gomory_hu(g));
  } else {
    fail(ErrorKind::kInvalidArgument, "bench: unknown mode '" + mode + "'");
  }
  r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  r.sparsifier_edges = h.graph.total_weight();
  r.super_nodes = h.graph.node_count();
  r.outer_edges = trace.outer_edges();
  return r;
}

// Least-squares slope b of ln(y) against ln(ln(x)): y ~ a * (ln x)^b.
inline double polylog_exponent(const std::vector<double>& x, const std::vector<double>& y) {
  require(x.size() == y.size() && x.size() >= 2, "polylog_exponent: need at least two points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double k = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    require(x[i] > std::exp(1.0) && y[i] > 0, "polylog_exponent: need x > e and y > 0");
    double a = std::log(std::log(x[i]));
    double b = std::log(y[i]);
    sx += a;
    sy += b;
    sxx += a * a;
    sxy += a * b;
  }
  double den = k * sxx - sx * sx;
  require(den > 0, "polylog_exponent: degenerate x values");
  return (k * sxy - sx * sy) / den;
}

}  // namespace fcs::bench

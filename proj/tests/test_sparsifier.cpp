#include <gtest/gtest.h>

#include "brute.hpp"
#include "fcs/generators.hpp"
#include "fcs/maxflow.hpp"
#include "fcs/oracle.hpp"
#include "fcs/sparsifier.hpp"

using namespace fcs;

namespace {

SparsifyConfig tight() {
  SparsifyConfig cfg;
  cfg.low_degree_factor = 4;
  return cfg;
}

// Independent check of one cut: no super-node straddles it and its value in h
// matches its value in g.
::testing::AssertionResult preserved(const Graph& g, const Sparsifier& h, const std::vector<NodeId>& side) {
  std::vector<char> in(g.node_count(), 0);
  for (NodeId v : side) in[v] = 1;
  std::vector<int> state(h.graph.node_count(), -1);
  for (NodeId v = 0; v < g.node_count(); ++v) {
    int& s = state[h.map.super_of(v)];
    if (s >= 0 && s != in[v]) return ::testing::AssertionFailure() << "cut is crossed at node " << v;
    s = in[v];
  }
  Weight gv = 0, hv = 0;
  for (const Edge& e : g.edges()) gv += in[e.u] != in[e.v] ? e.w : 0;
  for (const Edge& e : h.graph.edges()) hv += state[e.u] != state[e.v] ? e.w : 0;
  if (gv != hv) return ::testing::AssertionFailure() << "value " << gv << " became " << hv;
  return ::testing::AssertionSuccess();
}

// Brute-force preservation over all friendly cuts of value <= w (n <= 16).
::testing::AssertionResult preserves_all(const Graph& g, const Sparsifier& h, Weight w) {
  for (std::uint32_t m = 1; m < brute::full(g.node_count()); m += 2) {
    if (brute::cut_value(g, m) > w || !brute::friendly(g, m)) continue;
    auto r = preserved(g, h, brute::side_of(m, g.node_count()));
    if (!r) return r << " (mask " << m << ")";
  }
  return ::testing::AssertionSuccess();
}

void expect_monotone_safe(const Graph& g, const Sparsifier& h) {
  EXPECT_TRUE(verify_sparsifier_structure(g, h).passed);
  EXPECT_LE(h.graph.total_weight(), g.total_weight());
  for (NodeId s = 0; s < h.graph.node_count(); ++s) {
    EXPECT_EQ(h.graph.extra_volume(s), 0);
  }
}

}  // namespace

TEST(Oneshot, CliqueAnyOutputIsValid) {
  Graph k8 = gen::clique(8);
  Sparsifier h = friendly_sparsify_oneshot(k8, 8);
  EXPECT_TRUE(verify_friendly_preservation(k8, h, 8).passed);
  Sparsifier one = Sparsifier::from_map(k8, ContractionMap(std::vector<NodeId>(8, 0)));
  PreservationReport r = verify_friendly_preservation(k8, one, 8);
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(r.checked, 0u);
  EXPECT_TRUE(preserves_all(k8, one, 8));
}

TEST(Oneshot, PathKeepsEveryInternalEdge) {
  Graph p = gen::path(10);
  for (const SparsifyConfig& cfg : {SparsifyConfig{}, tight()}) {
    Sparsifier h = friendly_sparsify_oneshot(p, 2, cfg);
    PreservationReport r = verify_friendly_preservation(p, h, 2);
    EXPECT_TRUE(r.passed) << r.reason;
    for (NodeId i = 2; i <= 8; ++i) EXPECT_TRUE(preserved(p, h, gen::alt_cycle_arc(i)));
    expect_monotone_safe(p, h);
  }
}

TEST(Oneshot, DisconnectedComponentsStaySeparate) {
  Graph g = make_graph(6, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}, {3, 4, 1}, {4, 5, 1}, {3, 5, 1}});
  for (Weight w : {1, 2, 5, 100}) {
    for (const SparsifyConfig& cfg : {SparsifyConfig{}, tight()}) {
      Sparsifier a = friendly_sparsify_oneshot(g, w, cfg);
      Sparsifier b = friendly_sparsify(g, w, cfg);
      for (const Sparsifier* h : {&a, &b}) {
        EXPECT_TRUE(preserved(g, *h, {0, 1, 2}));
        for (NodeId u = 0; u < 3; ++u) {
          for (NodeId v = 3; v < 6; ++v) EXPECT_NE(h->map.super_of(u), h->map.super_of(v));
        }
      }
    }
  }
}

TEST(Oneshot, LargeWIsIdentity) {
  Graph g = gen::clique(6);
  Sparsifier h = friendly_sparsify_oneshot(g, 30);
  EXPECT_TRUE(h.map.is_identity());
  EXPECT_EQ(h.graph, g);
}

TEST(Oneshot, RejectsWeightedInput) {
  Graph g = make_graph(3, {{0, 1, 2}, {1, 2, 1}});
  try {
    friendly_sparsify_oneshot(g, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kInvalidArgument);
  }
  EXPECT_THROW(friendly_sparsify(g, 2), Error);
  EXPECT_THROW(terminal_sparsify(g, std::vector<NodeId>{0}, 2), Error);
}

TEST(Oneshot, TightConfigContractsSomething) {
  // Two K_7 joined by a bridge: with f = 4 and w = 1 every node keeps its
  // degree >= 6 >= 4, so the cliques are contracted.
  Graph g = gen::dumbbell(7);
  Sparsifier h = friendly_sparsify_oneshot(g, 1, tight());
  EXPECT_LT(h.graph.node_count(), g.node_count());
  EXPECT_TRUE(verify_friendly_preservation(g, h, 1).passed);
  EXPECT_TRUE(preserved(g, h, {0, 1, 2, 3, 4, 5, 6}));
}

TEST(Iterative, SmallDensityReturnsInput) {
  Graph p = gen::path(10);
  SparsifyTrace trace;
  Sparsifier h = friendly_sparsify(p, 2, {}, &trace);
  EXPECT_TRUE(h.map.is_identity());
  EXPECT_EQ(h.graph, p);
  EXPECT_TRUE(trace.iterations.empty());
}

TEST(Iterative, ScheduleEndsBetweenWAndFourW) {
  Graph g = gen::clique_of_cliques(4, 10);
  const Rational density = Rational(g.total_weight(), g.node_count());
  for (Weight w : {1, 2, 3, 5}) {
    SparsifyTrace trace;
    Sparsifier h = friendly_sparsify(g, w, tight(), &trace);
    expect_monotone_safe(g, h);
    ASSERT_FALSE(trace.iterations.empty());
    Rational wj = density * density;
    for (const auto& it : trace.iterations) {
      wj = wj / Rational(4);
      EXPECT_EQ(it.w_j, wj);
      EXPECT_GE(it.w_j, Rational(w));
    }
    EXPECT_LT(trace.iterations.back().w_j, Rational(4 * w));
  }
}

TEST(Iterative, CliqueOfCliquesReducedInstance) {
  Graph g = gen::clique_of_cliques(8, 4);
  for (const SparsifyConfig& cfg : {SparsifyConfig{}, tight()}) {
    Sparsifier it = friendly_sparsify(g, 16, cfg);
    Sparsifier one = friendly_sparsify_oneshot(g, 16, cfg);
    for (const Sparsifier* h : {&it, &one}) {
      expect_monotone_safe(g, *h);
      int checked = 0;
      for (std::uint32_t blobs = 1; blobs < (1u << 8) - 1; blobs += 2) {
        std::vector<NodeId> side;
        for (NodeId b = 0; b < 8; ++b) {
          if (!((blobs >> b) & 1u)) continue;
          for (NodeId i = 0; i < 4; ++i) side.push_back(b * 4 + i);
        }
        if (cut_value(g, side) > 16 || !is_friendly(g, side)) continue;
        ++checked;
        EXPECT_TRUE(preserved(g, *h, side));
      }
      EXPECT_EQ(checked, 127);
    }
  }
}

TEST(Iterative, CliqueOfCliquesFullInstance) {
  Graph g = gen::clique_of_cliques(16);
  const NodeId blob = gen::default_blob(16);
  for (const SparsifyConfig& cfg : {SparsifyConfig{}, tight()}) {
    SparsifyTrace trace;
    Sparsifier h = friendly_sparsify(g, 16, cfg, &trace);
    expect_monotone_safe(g, h);
    EXPECT_EQ(trace.iterations.size(), 2u);
    for (NodeId b = 0; b < 16; ++b) {
      std::vector<NodeId> side;
      for (NodeId i = 0; i < blob; ++i) side.push_back(b * blob + i);
      ASSERT_TRUE(is_friendly(g, side));
      ASSERT_EQ(cut_value(g, side), 15);
      EXPECT_TRUE(preserved(g, h, side));
    }
    // Degrees are at most 40, below 10 * sqrt(w_j) in both iterations.
    if (cfg.low_degree_factor == 10) {
      EXPECT_EQ(h.graph.node_count(), g.node_count());
    } else {
      EXPECT_LT(h.graph.node_count(), g.node_count());
    }
  }
}

TEST(Sparsify, RandomGraphsPreserveFriendlyCutsAcrossSeeds) {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    Graph g = brute::random_graph(14, 0.5, seed);
    std::vector<oracle::CutRecord> cat = oracle::cut_catalog(g);
    for (const SparsifyConfig& base : {SparsifyConfig{}, tight()}) {
      SparsifyConfig cfg = base;
      cfg.seed = seed;
      Sparsifier a = friendly_sparsify_oneshot(g, 4, cfg);
      Sparsifier b = friendly_sparsify(g, 4, cfg);
      PreservationReport ra = verify_friendly_preservation(g, a, 4, cat);
      PreservationReport rb = verify_friendly_preservation(g, b, 4, cat);
      ASSERT_TRUE(ra.passed) << "seed " << seed << ": " << ra.reason;
      ASSERT_TRUE(rb.passed) << "seed " << seed << ": " << rb.reason;
      ASSERT_EQ(ra.checked, rb.checked);
    }
  }
}

TEST(Sparsify, VerifierAgreesWithBruteForceOnSmallGraphs) {
  for (const auto& inst : brute::corpus(60, 6, 12, 404)) {
    for (Weight w : {1, 2, 4}) {
      Sparsifier h = friendly_sparsify_oneshot(inst.g, w, tight());
      EXPECT_TRUE(preserves_all(inst.g, h, w));
      EXPECT_TRUE(verify_friendly_preservation(inst.g, h, w).passed);
    }
  }
}

TEST(Verify, DetectsCrossedCut) {
  Graph p = gen::path(4);
  Sparsifier bad = Sparsifier::from_map(p, ContractionMap(std::vector<NodeId>{0, 1, 0, 2}));
  PreservationReport r = verify_friendly_preservation(p, bad, 2);
  EXPECT_FALSE(r.passed);
  EXPECT_EQ(r.witness, (std::vector<NodeId>{0, 1}));
  EXPECT_TRUE(verify_friendly_preservation(p, Sparsifier::identity(p), 5).passed);
}

TEST(Verify, DetectsWrongValueAndStructure) {
  Graph p = gen::path(4);
  Sparsifier h = Sparsifier::identity(p);
  h.graph = make_graph(4, {{0, 1, 1}, {1, 2, 2}, {2, 3, 1}});
  PreservationReport r = verify_friendly_preservation(p, h, 2);
  EXPECT_FALSE(r.passed);
  EXPECT_NE(r.reason.find("has value 2"), std::string::npos);
  EXPECT_FALSE(verify_sparsifier_structure(p, h).passed);
}

TEST(Verify, MincutPreservation) {
  Graph g = gen::dumbbell(5);
  EXPECT_TRUE(verify_mincut_preservation(g, Sparsifier::identity(g)).passed);
  std::vector<NodeId> halves(10, 0);
  for (NodeId v = 5; v < 10; ++v) halves[v] = 1;
  EXPECT_TRUE(verify_mincut_preservation(g, Sparsifier::from_map(g, ContractionMap(halves))).passed);
  PreservationReport r = verify_mincut_preservation(g, Sparsifier::from_map(g, ContractionMap(std::vector<NodeId>(10, 0))));
  EXPECT_FALSE(r.passed);
}

TEST(SizeReport, Examples) {
  Graph k4 = gen::clique(4);
  SizeReport id = sparsifier_size_report(Sparsifier::identity(k4));
  EXPECT_EQ(id.nodes, 4);
  EXPECT_EQ(id.weighted_edges, 6);
  SizeReport all = sparsifier_size_report(Sparsifier::from_map(k4, ContractionMap(std::vector<NodeId>(4, 0))));
  EXPECT_EQ(all.nodes, 1);
  EXPECT_EQ(all.weighted_edges, 0);
}

TEST(Terminal, StarLeaves) {
  Graph star = gen::star(6);
  std::vector<NodeId> t{1, 2};
  for (const SparsifyConfig& cfg : {SparsifyConfig{}, tight()}) {
    Sparsifier h = terminal_sparsify(star, t, 2, cfg);
    EXPECT_NE(h.map.super_of(1), h.map.super_of(0));
    EXPECT_NE(h.map.super_of(2), h.map.super_of(0));
    EXPECT_EQ(max_flow(h.graph, h.map.super_of(1), h.map.super_of(2)).value, 1);
    EXPECT_TRUE(verify_terminal_preservation(star, h, t, 2).passed);
  }
}

TEST(Terminal, PathEndpoints) {
  Graph p = gen::path(8);
  std::vector<NodeId> t{0, 7};
  Sparsifier h = terminal_sparsify(p, t, 1);
  EXPECT_TRUE(verify_terminal_preservation(p, h, t, 1).passed);
  EXPECT_EQ(max_flow(h.graph, h.map.super_of(0), h.map.super_of(7)).value, 1);
}

TEST(Terminal, CliquePair) {
  Graph k8 = gen::clique(8);
  std::vector<NodeId> t{2, 5};
  for (const SparsifyConfig& cfg : {SparsifyConfig{}, tight()}) {
    Sparsifier h = terminal_sparsify(k8, t, 8, cfg);
    for (NodeId term : t) {
      for (NodeId v = 0; v < 8; ++v) {
        if (v != term) EXPECT_NE(h.map.super_of(v), h.map.super_of(term));
      }
    }
    EXPECT_EQ(max_flow(h.graph, h.map.super_of(2), h.map.super_of(5)).value, 7);
    EXPECT_TRUE(verify_terminal_preservation(k8, h, t, 8).passed);
  }
}

TEST(Terminal, RandomGraphs) {
  for (const auto& inst : brute::corpus(60, 6, 13, 808)) {
    std::vector<NodeId> t{0, static_cast<NodeId>(inst.n / 2), static_cast<NodeId>(inst.n - 1)};
    for (Weight w : {1, 3, 6}) {
      Sparsifier h = terminal_sparsify(inst.g, t, w, tight());
      expect_monotone_safe(inst.g, h);
      PreservationReport r = verify_terminal_preservation(inst.g, h, t, w);
      ASSERT_TRUE(r.passed) << r.reason;
    }
  }
  EXPECT_THROW(terminal_sparsify(gen::path(3), std::vector<NodeId>{}, 1), Error);
}

TEST(Config, Validation) {
  SparsifyConfig cfg;
  cfg.low_degree_factor = 2;
  EXPECT_THROW(cfg.validate(), Error);
  cfg = {};
  cfg.outside_fraction = Rational(2, 5);
  EXPECT_THROW(cfg.validate(), Error);
  cfg = {};
  cfg.phi = Rational(0);
  EXPECT_THROW(cfg.validate(), Error);
  EXPECT_NO_THROW(tight().validate());
}

#include <gtest/gtest.h>

#include "brute.hpp"
#include "fcs/generators.hpp"
#include "fcs/graph.hpp"
#include "fcs/io.hpp"
#include "fcs/rational.hpp"

using namespace fcs;

namespace {

Graph weighted_cycle() { return make_graph(4, {{0, 1, 10}, {1, 2, 4}, {2, 3, 10}, {0, 3, 3}}); }

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected an fcs::Error";
  return ErrorKind::kVerification;
}

}  // namespace

TEST(GraphBuilder, MergesParallelEdgesAndSortsEndpoints) {
  GraphBuilder b(3);
  b.add_edge(1, 0, 2).add_edge(0, 1, 3).add_edge(2, 1);
  Graph g = std::move(b).build();
  ASSERT_EQ(g.edge_count(), 2u);
  EXPECT_EQ(g.edges()[0], (Edge{0, 1, 5}));
  EXPECT_EQ(g.edges()[1], (Edge{1, 2, 1}));
  EXPECT_EQ(g.degree(1), 6);
  EXPECT_FALSE(g.is_simple());
}

TEST(GraphBuilder, RejectsSelfLoopsZeroWeightsAndBadIds) {
  EXPECT_EQ(kind_of([] { GraphBuilder(3).add_edge(1, 1); }), ErrorKind::kInvalidArgument);
  EXPECT_EQ(kind_of([] { GraphBuilder(3).add_edge(0, 1, 0); }), ErrorKind::kInvalidArgument);
  EXPECT_EQ(kind_of([] { GraphBuilder(3).add_edge(0, 3); }), ErrorKind::kInvalidArgument);
}

TEST(Degree, Examples) {
  Graph k4 = gen::clique(4);
  for (NodeId v = 0; v < 4; ++v) EXPECT_EQ(degree(k4, v), 3);
  EXPECT_EQ(degree(gen::path(3), 1), 2);
  GraphBuilder b(1);
  b.add_extra_volume(0, 5);
  EXPECT_EQ(degree(std::move(b).build(), 0), 0);
  EXPECT_THROW(degree(k4, 4), Error);
}

TEST(Volume, Examples) {
  Graph k4 = gen::clique(4);
  std::vector<NodeId> ab{0, 1};
  EXPECT_EQ(volume(k4, ab), 6);
  EXPECT_EQ(volume(k4, std::vector<NodeId>{}), 0);
  GraphBuilder b(3);
  b.add_edge(0, 1).add_edge(1, 2).add_extra_volume(1, 4);
  std::vector<NodeId> mid{1};
  EXPECT_EQ(volume(std::move(b).build(), mid), 6);
}

TEST(CutValue, Examples) {
  std::vector<NodeId> a{0};
  std::vector<NodeId> ab{0, 1};
  EXPECT_EQ(cut_value(gen::clique(4), a), 3);
  EXPECT_EQ(cut_value(gen::path(4), ab), 1);
  EXPECT_EQ(cut_value(weighted_cycle(), ab), 7);
  EXPECT_THROW(cut_value(gen::path(4), std::vector<NodeId>{}), Error);
  EXPECT_THROW(cut_value(gen::path(2), ab), Error);
}

TEST(IsFriendly, Examples) {
  std::vector<NodeId> a{0};
  EXPECT_FALSE(is_friendly(gen::clique(4), a));
  GraphBuilder b(6);
  for (NodeId v = 0; v < 6; ++v) b.add_edge(v, (v + 1) % 6);
  Graph c6 = std::move(b).build();
  for (NodeId start = 0; start < 6; ++start) {
    std::vector<NodeId> arc{start, static_cast<NodeId>((start + 1) % 6), static_cast<NodeId>((start + 2) % 6)};
    EXPECT_TRUE(is_friendly(c6, arc));
  }
  Graph coc = gen::clique_of_cliques(16);
  ASSERT_EQ(coc.node_count(), 16 * 40);
  std::vector<NodeId> blob(40);
  std::iota(blob.begin(), blob.end(), 0);
  EXPECT_TRUE(is_friendly(coc, blob));
}

TEST(IsFriendly, BaseDegreesOverrideOwnDegrees) {
  // Node 0 of a contracted graph has one edge but a base degree of 10.
  Graph g = make_graph(2, {{0, 1, 1}});
  std::vector<NodeId> s{0};
  EXPECT_FALSE(is_friendly(g, s));
  std::vector<Weight> base{10, 10};
  EXPECT_TRUE(is_friendly(g, s, base));
}

TEST(IsFriendly, MatchesDirectDefinitionOnRandomGraphs) {
  for (const auto& inst : brute::corpus(40, 4, 9, 11)) {
    const Graph& g = inst.g;
    for (std::uint32_t m = 1; m < brute::full(g.node_count()); ++m) {
      std::vector<NodeId> side = brute::side_of(m, g.node_count());
      ASSERT_EQ(is_friendly(g, side), brute::friendly(g, m));
      ASSERT_EQ(cut_value(g, side), brute::cut_value(g, m));
      ASSERT_EQ(cut_value(g, side), cut_value(g, complement(g.node_count(), side)));
    }
  }
}

TEST(Contract, Examples) {
  Graph path = gen::path(3);
  Graph merged = contract(path, ContractionMap(std::vector<NodeId>{0, 0, 1}));
  EXPECT_EQ(merged, make_graph(2, {{0, 1, 1}}));
  Graph tri = gen::clique(3);
  EXPECT_EQ(contract(tri, ContractionMap(std::vector<NodeId>{0, 0, 1})), make_graph(2, {{0, 1, 2}}));
  Graph k4 = contract(gen::clique(4), ContractionMap(std::vector<NodeId>{0, 0, 0, 0}));
  EXPECT_EQ(k4.node_count(), 1);
  EXPECT_EQ(k4.edge_count(), 0u);
}

TEST(Contract, IdentityAndWeightMonotone) {
  for (const auto& inst : brute::corpus(20, 5, 12, 5)) {
    EXPECT_EQ(contract(inst.g, ContractionMap::identity(inst.n)), inst.g);
    std::vector<NodeId> labels(inst.n);
    for (NodeId v = 0; v < inst.n; ++v) labels[v] = v % 3;
    Graph c = contract(inst.g, ContractionMap::from_labels(labels));
    EXPECT_LE(c.total_weight(), inst.g.total_weight());
  }
}

TEST(Contract, SumsExtraVolume) {
  GraphBuilder b(3);
  b.add_edge(0, 1).add_edge(1, 2).add_extra_volume(0, 2).add_extra_volume(1, 3);
  Graph c = contract(std::move(b).build(), ContractionMap(std::vector<NodeId>{0, 0, 1}));
  EXPECT_EQ(c.extra_volume(0), 5);
  EXPECT_EQ(c.extra_volume(1), 0);
}

TEST(ContractionMap, ValidatesAndComposes) {
  EXPECT_THROW(ContractionMap(std::vector<NodeId>{0, 2}), Error);
  EXPECT_THROW(ContractionMap(std::vector<NodeId>{0, -1}), Error);
  ContractionMap a(std::vector<NodeId>{0, 0, 1, 2});
  ContractionMap b(std::vector<NodeId>{0, 1, 1});
  ContractionMap c = a.then(b);
  EXPECT_EQ(c, ContractionMap(std::vector<NodeId>{0, 0, 1, 1}));
  EXPECT_EQ(c.size_of(1), 2);
  EXPECT_EQ(ContractionMap::from_labels(std::vector<NodeId>{7, 3, 7}), ContractionMap(std::vector<NodeId>{0, 1, 0}));
}

TEST(ContractionMap, RefineConnectedSplitsDisconnectedClasses) {
  Graph path = gen::path(4);
  ContractionMap ends(std::vector<NodeId>{0, 1, 1, 0});
  ContractionMap r = refine_connected(path, ends);
  EXPECT_EQ(r.super_count(), 3);
  EXPECT_NE(r.super_of(0), r.super_of(3));
  EXPECT_EQ(r.super_of(1), r.super_of(2));
}

TEST(Sparsifier, LiftAndProject) {
  Sparsifier h = Sparsifier::from_map(gen::path(4), ContractionMap(std::vector<NodeId>{0, 0, 1, 2}));
  EXPECT_EQ(h.lift(std::vector<NodeId>{0, 2}), (std::vector<NodeId>{0, 1, 3}));
  EXPECT_EQ(h.project(std::vector<NodeId>{0, 1}), std::optional<std::vector<NodeId>>(std::vector<NodeId>{0}));
  EXPECT_EQ(h.project(std::vector<NodeId>{0}), std::nullopt);
  EXPECT_EQ(h.super_base_degrees(), (std::vector<Weight>{3, 2, 1}));
}

TEST(ComponentLabels, CountsComponents) {
  Graph g = make_graph(5, {{0, 1, 1}, {3, 4, 1}});
  NodeId k = 0;
  auto label = component_labels(g, &k);
  EXPECT_EQ(k, 3);
  EXPECT_EQ(label, (std::vector<NodeId>{0, 0, 1, 2, 2}));
}

TEST(ParseGraph, Examples) {
  EXPECT_EQ(parse_graph("3 2\n0 1\n1 2"), gen::path(3));
  EXPECT_EQ(parse_graph("2 1\n0 1 7"), make_graph(2, {{0, 1, 7}}));
  try {
    parse_graph("2 1\n0 0");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kParse);
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("self-loop"), std::string::npos);
  }
}

TEST(ParseGraph, ReportsErrorsWithLineNumbers) {
  struct Case {
    const char* text;
    const char* fragment;
  };
  for (const Case& c : {Case{"2 1\n0 1 0", "non-positive"}, Case{"2 1\n0 2", "out of range"},
                        Case{"2 1\n0 x", "malformed"}, Case{"3 2\n0 1", "expected 2 edges"},
                        Case{"2 1\n0 1\n1 0", "trailing"}, Case{"", "empty"}, Case{"2 1\n0 1 2 3", "expected"}}) {
    try {
      parse_graph(c.text);
      ADD_FAILURE() << c.text;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::kParse);
      EXPECT_NE(std::string(e.what()).find(c.fragment), std::string::npos) << e.what();
    }
  }
}

TEST(ParseGraph, CommentsBlankLinesAndRoundTrip) {
  Graph g = parse_graph("# header\n\n4 3\n0 1 2\n# mid\n1 2\n2 3 5\n");
  EXPECT_EQ(parse_graph(serialize_graph(g)), g);
  EXPECT_EQ(parse_graph("2 2\n0 1\n1 0 2"), make_graph(2, {{0, 1, 3}}));
}

TEST(ParseSubset, SortsAndValidates) {
  EXPECT_EQ(parse_subset("3\n1\n3\n", 4), (std::vector<NodeId>{1, 3}));
  EXPECT_THROW(parse_subset("4\n", 4), Error);
}

TEST(Rational, ArithmeticAndOrdering) {
  EXPECT_EQ(Rational(16, 28), Rational(4, 7));
  EXPECT_EQ(Rational(1, 2) + Rational(1, 3), Rational(5, 6));
  EXPECT_EQ(Rational(2, 5) - Rational(1, 10), Rational(3, 10));
  EXPECT_LT(Rational(1, 57), Rational(1, 4));
  EXPECT_LT(Rational(1000), Rational::infinity());
  EXPECT_TRUE(Rational::infinity().is_infinite());
  EXPECT_EQ(Rational(-2, -4), Rational(1, 2));
  EXPECT_THROW(Rational(1) / Rational(0), Error);
}

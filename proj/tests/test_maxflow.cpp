#include <gtest/gtest.h>

#include "brute.hpp"
#include "fcs/generators.hpp"
#include "fcs/maxflow.hpp"

using namespace fcs;

TEST(MaxFlow, Examples) {
  EXPECT_EQ(max_flow(gen::path(4), 0, 3).value, 1);
  EXPECT_EQ(max_flow(gen::clique(6), 0, 5).value, 5);
  FlowResult r = max_flow(gen::dumbbell(4), 1, 6);
  EXPECT_EQ(r.value, 1);
  EXPECT_EQ(r.min_source_side.side, (std::vector<NodeId>{0, 1, 2, 3}));
  EXPECT_EQ(max_flow(make_graph(4, {{0, 1, 1}, {2, 3, 1}}), 0, 3).value, 0);
  EXPECT_THROW(max_flow(gen::path(3), 1, 1), Error);
}

TEST(MaxFlow, WeightedCycle) {
  Graph g = make_graph(4, {{0, 1, 10}, {1, 2, 4}, {2, 3, 10}, {0, 3, 3}});
  FlowResult r = max_flow(g, 0, 2);
  EXPECT_EQ(r.value, 7);
  EXPECT_EQ(r.min_source_side.side, (std::vector<NodeId>{0, 1}));
}

TEST(MaxFlow, MatchesEnumerationAndReturnsMinimalSourceSide) {
  int checked = 0;
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    Graph g = brute::random_weighted(8, 0.45, 6, seed);
    for (NodeId s = 0; s < 8; ++s) {
      for (NodeId t = 0; t < 8; ++t) {
        if (s == t) continue;
        FlowResult r = max_flow(g, s, t);
        ASSERT_EQ(r.value, brute::min_cut(g, s, t));
        std::uint32_t side = brute::mask_of(r.min_source_side.side);
        ASSERT_TRUE(brute::in(side, s));
        ASSERT_FALSE(brute::in(side, t));
        ASSERT_EQ(brute::cut_value(g, side), r.value);
        for (std::uint32_t m = 1; m < brute::full(8); ++m) {
          if (brute::in(m, s) && !brute::in(m, t) && brute::cut_value(g, m) == r.value) {
            ASSERT_EQ(m & side, side) << "source side not inclusion-minimal";
          }
        }
        ++checked;
      }
    }
  }
  EXPECT_EQ(checked, 40 * 56);
}

TEST(MinCutBetweenSets, MatchesEnumeration) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    Graph g = brute::random_weighted(9, 0.4, 5, seed);
    std::vector<NodeId> a{0, 3};
    std::vector<NodeId> b{5, 7, 8};
    FlowResult r = min_cut_between_sets(g, a, b);
    Weight best = std::numeric_limits<Weight>::max();
    std::uint32_t ma = brute::mask_of(a);
    std::uint32_t mb = brute::mask_of(b);
    for (std::uint32_t m = 1; m < brute::full(9); ++m) {
      if ((m & ma) == ma && (m & mb) == 0) best = std::min(best, brute::cut_value(g, m));
    }
    EXPECT_EQ(r.value, best);
    std::uint32_t side = brute::mask_of(r.min_source_side.side);
    EXPECT_EQ(side & ma, ma);
    EXPECT_EQ(side & mb, 0u);
    EXPECT_EQ(brute::cut_value(g, side), best);
  }
  std::vector<NodeId> x{1};
  EXPECT_THROW(min_cut_between_sets(gen::path(3), x, x), Error);
}

TEST(FlowNetwork, DirectedArcs) {
  FlowNetwork net(3);
  net.add_directed(0, 1, 5);
  net.add_directed(1, 2, 3);
  net.add_directed(2, 0, 100);
  EXPECT_EQ(net.max_flow(0, 2), 3);
  std::vector<char> reach = net.residual_reachable(0);
  EXPECT_TRUE(reach[1]);
  EXPECT_FALSE(reach[2]);
}

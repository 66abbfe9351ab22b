#include <gtest/gtest.h>

#include <cmath>

#include "adversary.hpp"
#include "brute.hpp"
#include "fcs/generators.hpp"
#include "fcs/single_source.hpp"

using namespace fcs;

namespace {

void expect_sound(const Graph& g, const EstimateTable& t) {
  std::string why;
  ASSERT_TRUE(witnesses_valid(g, t, &why)) << why;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (v != t.source) ASSERT_GE(t.value[v], brute::min_cut(g, t.source, v));
  }
}

// Exact on every pair that has an unfriendly minimum cut.
void expect_exact_on_unfriendly(const Graph& g, const EstimateTable& t) {
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (v == t.source) continue;
    brute::Classified c = brute::classify(g, t.source, v);
    if (c.any_unfriendly) ASSERT_EQ(t.value[v], c.value) << "p=" << t.source << " v=" << v;
  }
}

}  // namespace

TEST(ApproxSingleSource, ExactModeExamples) {
  EstimateTable k4 = approx_single_source(gen::clique(4), 0);
  for (NodeId v = 1; v < 4; ++v) EXPECT_EQ(k4.value[v], 3);
  EstimateTable path = approx_single_source(gen::path(5), 0);
  for (NodeId v = 1; v < 5; ++v) EXPECT_EQ(path.value[v], 1);
  Graph db = gen::dumbbell(5);
  EstimateTable d = approx_single_source(db, 1);
  EXPECT_EQ(d.value[0], 4);
  for (NodeId v = 2; v < 5; ++v) EXPECT_EQ(d.value[v], 4);
  for (NodeId v = 5; v < 10; ++v) EXPECT_EQ(d.value[v], 1);
  expect_sound(db, d);
}

TEST(ApproxSingleSource, PluginIsValidated) {
  Graph g = gen::path(4);
  ApproxEstimator liar = [](const Graph& h, NodeId p, const Rational&) {
    EstimateTable t = EstimateTable::unbounded(h.node_count(), p);
    for (NodeId v = 0; v < h.node_count(); ++v) {
      if (v != p) t.offer(v, 1, {v});
    }
    return t;
  };
  try {
    approx_single_source(g, 0, Rational(1, 100), liar);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kVerification);
  }
}

TEST(SingleSourceUnfriendly, CliqueAndPath) {
  for (NodeId p = 0; p < 6; ++p) {
    EstimateTable t = single_source_unfriendly(gen::clique(6), p);
    for (NodeId v = 0; v < 6; ++v) {
      if (v != p) EXPECT_EQ(t.value[v], 5);
    }
  }
  EstimateTable t = single_source_unfriendly(gen::path(6), 0);
  for (NodeId v = 1; v < 6; ++v) EXPECT_EQ(t.value[v], 1);
}

TEST(SingleSourceUnfriendly, DumbbellCrossPairsAreSound) {
  Graph g = gen::dumbbell(5);
  EstimateTable t = single_source_unfriendly(g, 2);
  expect_sound(g, t);
  for (NodeId v = 5; v < 10; ++v) EXPECT_GE(t.value[v], 1);
}

TEST(SingleSourceUnfriendly, ExactWheneverAnUnfriendlyMinimumCutExists) {
  for (const auto& inst : brute::corpus(40, 4, 12, 1234)) {
    for (NodeId p = 0; p < inst.n; p += 3) {
      SingleSourceTrace trace;
      EstimateTable t = single_source_unfriendly(inst.g, p, {}, &trace);
      expect_sound(inst.g, t);
      expect_exact_on_unfriendly(inst.g, t);
    }
  }
}

TEST(SingleSourceUnfriendly, AdversarialEstimatorStillExact) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    Graph g = brute::random_weighted(9, 0.5, 3, seed);
    SingleSourceOptions opt;
    opt.eps = Rational(1, 4);
    opt.delta = Rational(1, 4);
    opt.estimator = brute::worst_estimates;
    for (NodeId p = 0; p < 9; p += 4) {
      SingleSourceTrace trace;
      EstimateTable t = single_source_unfriendly(g, p, opt, &trace);
      expect_sound(g, t);
      expect_exact_on_unfriendly(g, t);
    }
  }
}

TEST(SingleSourceUnfriendly, LevelStructure) {
  Graph g = brute::random_weighted(10, 0.6, 20, 5);
  SingleSourceOptions opt;
  opt.delta = Rational(1, 10);
  SingleSourceTrace trace;
  EstimateTable initial = approx_single_source(g, 0);
  single_source_unfriendly(g, 0, opt, &trace);
  ASSERT_FALSE(trace.levels.empty());
  Weight top = 0;
  for (NodeId v = 1; v < 10; ++v) top = std::max(top, initial.value[v]);
  const double bound = std::ceil(std::log(static_cast<double>(g.max_weight()) * 10) / std::log(1.1));
  EXPECT_LE(static_cast<double>(trace.levels.size()), bound);
  int calls = 0;
  for (std::size_t i = 0; i < trace.levels.size(); ++i) {
    const LevelRecord& rec = trace.levels[i];
    EXPECT_EQ(rec.index, static_cast<int>(i));
    EXPECT_NEAR(static_cast<double>(rec.threshold), std::pow(1.1, static_cast<double>(i)), 1e-9 * rec.threshold);
    EXPECT_LE(static_cast<double>(rec.threshold), static_cast<double>(top));
    calls += !rec.skipped;
  }
  EXPECT_EQ(calls, trace.isolating_calls);
  EXPECT_GT(trace.isolating_calls, 0);
}

TEST(SingleSourceUnfriendly, RejectsHugeWeights) {
  Graph g = make_graph(2, {{0, 1, 17}});
  EXPECT_THROW(single_source_unfriendly(g, 0), Error);
}

TEST(Lemmas, DegenerateAndViolatedHypotheses) {
  Graph k4 = gen::clique(4);
  EXPECT_THROW(lemma_unfriendly_v(k4, 0, 1, std::vector<NodeId>{1}), Error);
  Graph p = gen::path(4);
  // {2, 3} is a minimum 0,2-cut but node 2 keeps half its degree inside.
  EXPECT_THROW(lemma_unfriendly_v(p, 0, 2, std::vector<NodeId>{2, 3}), Error);
  // Not a minimum cut.
  EXPECT_THROW(lemma_unfriendly_v(gen::clique(5), 0, 1, std::vector<NodeId>{1, 2}), Error);
}

TEST(Lemmas, HoldOnEveryQualifyingRandomInstance) {
  int v_cases = 0;
  int p_cases = 0;
  for (std::uint64_t seed = 1; seed <= 150; ++seed) {
    Graph g = brute::random_graph(10, 0.4, seed);
    for (NodeId p = 0; p < 10; p += 3) {
      for (NodeId v = 0; v < 10; ++v) {
        if (v == p) continue;
        Weight lambda = brute::min_cut(g, p, v);
        for (std::uint32_t m = 1; m < brute::full(10); ++m) {
          if (!brute::in(m, v) || brute::in(m, p) || brute::cut_value(g, m) != lambda) continue;
          std::vector<NodeId> s = brute::side_of(m, 10);
          std::vector<char> in(10, 0);
          for (NodeId u : s) in[u] = 1;
          Weight v_out = 0, p_in = 0;
          for (const Arc& a : g.neighbors(v)) v_out += in[a.to] ? 0 : a.w;
          for (const Arc& a : g.neighbors(p)) p_in += in[a.to] ? a.w : 0;
          if (s.size() >= 2 && 5 * v_out > 3 * g.degree(v)) {
            ++v_cases;
            ASSERT_TRUE(lemma_unfriendly_v(g, p, v, s));
          }
          if (s.size() + 1 < 10 && 5 * p_in > 3 * g.degree(p)) {
            ++p_cases;
            ASSERT_TRUE(lemma_unfriendly_p(g, p, v, s));
          }
        }
      }
    }
  }
  EXPECT_GT(v_cases, 0);
  EXPECT_GT(p_cases, 0);
}

#include <gtest/gtest.h>

#include <numeric>

#include "hamdec/classic.hpp"
#include "hamdec/generator.hpp"
#include "hamdec/rng.hpp"

using namespace hamdec;

namespace {

Multigraph cluster_cycle_edges(const std::vector<ClusterCycle>& cycles, int vertices) {
  Multigraph all(vertices);
  for (const auto& c : cycles) {
    const auto& o = c.order();
    for (std::size_t t = 0; t < o.size(); ++t) all.add_edge(o[t], o[(t + 1) % o.size()]);
  }
  return all;
}

std::vector<Vertex> range(int from, int to) {
  std::vector<Vertex> out(to - from);
  std::iota(out.begin(), out.end(), from);
  return out;
}

Multigraph complete_bipartite(int m) {
  Multigraph g(2 * m);
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) g.add_edge(a, m + b);
  }
  return g;
}

bool regular_on(const Multigraph& g, std::span<const Vertex> vertices, int degree) {
  for (Vertex v : vertices) {
    if (g.degree(v) != degree) return false;
  }
  return true;
}

// Exhaustive: does g[left, right] have a spanning `degree`-regular subgraph?
bool regular_subgraph_exists(const Multigraph& g, int m, int degree) {
  std::vector<Edge> edges;
  for (int a = 0; a < m; ++a) {
    for (int b = m; b < 2 * m; ++b) {
      if (g.has_edge(a, b)) edges.emplace_back(a, b);
    }
  }
  const int count = static_cast<int>(edges.size());
  for (long mask = 0; mask < (1L << count); ++mask) {
    if (__builtin_popcountl(mask) != degree * m) continue;
    std::vector<int> deg(2 * m, 0);
    for (int t = 0; t < count; ++t) {
      if (mask & (1L << t)) ++deg[edges[t].u], ++deg[edges[t].v];
    }
    if (std::all_of(deg.begin(), deg.end(), [&](int d) { return d == degree; })) return true;
  }
  return false;
}

}  // namespace

TEST(Walecki, SmallCases) {
  ASSERT_EQ(walecki_decompose(3).size(), 1u);
  EXPECT_EQ(walecki_decompose(5).size(), 2u);
  EXPECT_THROW(walecki_decompose(4), Error);
}

TEST(Walecki, ExactEdgePartitionForOddK) {
  for (int K = 3; K <= 21; K += 2) {
    const auto cycles = walecki_decompose(K);
    ASSERT_EQ(static_cast<int>(cycles.size()), (K - 1) / 2);
    for (const auto& c : cycles) ASSERT_EQ(c.size(), K);
    const auto all = cluster_cycle_edges(cycles, K);
    EXPECT_EQ(all.edge_count(), 1LL * K * (K - 1) / 2);
    for (int x = 0; x < K; ++x) {
      for (int y = x + 1; y < K; ++y) EXPECT_EQ(all.multiplicity(x, y), 1) << K << ": " << x << "-" << y;
    }
  }
}

TEST(BipartiteCycles, ExactEdgePartitionForEvenK) {
  const auto two = bipartite_hamilton_decompose(2);
  ASSERT_EQ(two.size(), 1u);
  EXPECT_EQ(two[0].size(), 4);
  for (int K = 2; K <= 20; K += 2) {
    const auto cycles = bipartite_hamilton_decompose(K);
    ASSERT_EQ(static_cast<int>(cycles.size()), K / 2);
    const auto all = cluster_cycle_edges(cycles, 2 * K);
    EXPECT_EQ(all.edge_count(), 1LL * K * K);
    for (int a = 0; a < K; ++a) {
      for (int b = K; b < 2 * K; ++b) EXPECT_EQ(all.multiplicity(a, b), 1);
    }
    for (const auto& c : cycles) {
      for (int t = 0; t < c.size(); ++t) EXPECT_NE(c.at(t) < K, c.next(c.at(t)) < K);
    }
  }
  EXPECT_THROW(bipartite_hamilton_decompose(3), Error);
}

TEST(RegularSubgraph, CompleteBipartite) {
  const auto g = complete_bipartite(10);
  const auto h = regular_spanning_subgraph(g, range(0, 10), range(10, 20), 0.0, 0.2);
  EXPECT_TRUE(regular_on(h, range(0, 20), 8));
  EXPECT_TRUE(g.contains(h));
}

TEST(RegularSubgraph, CompleteMinusPerfectMatching) {
  auto g = complete_bipartite(10);
  for (int a = 0; a < 10; ++a) g.remove_edge(a, 10 + a);
  const auto h = regular_spanning_subgraph(g, range(0, 10), range(10, 20), 0.1, 0.2);
  EXPECT_TRUE(regular_on(h, range(0, 20), 7));
  EXPECT_TRUE(g.contains(h));
}

TEST(RegularSubgraph, StarHeavyGraphGivesCutWitness) {
  // Left vertex 0 sees everything; the rest see only right vertex 10.
  Multigraph g(20);
  for (int b = 10; b < 20; ++b) g.add_edge(0, b);
  for (int a = 1; a < 10; ++a) g.add_edge(a, 10);
  try {
    regular_spanning_subgraph(g, range(0, 10), range(10, 20), 0.0, 0.5);
    FAIL() << "expected a cut violation";
  } catch (const CutViolation& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DegreeHypothesisViolated);
    EXPECT_TRUE(witness_violates_cut_bound(g, range(10, 20), e.witness()));
  }
}

TEST(RegularSubgraph, FlowAgreesWithExhaustiveSearch) {
  Rng rng(21);
  int feasible = 0, infeasible = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const int m = 3;
    Multigraph g(2 * m);
    for (int a = 0; a < m; ++a) {
      for (int b = m; b < 2 * m; ++b) {
        if (rng.bernoulli(0.6)) g.add_edge(a, b);
      }
    }
    const int degree = 1 + static_cast<int>(rng.below(2));
    const bool expected = regular_subgraph_exists(g, m, degree);
    try {
      const auto h = regular_subgraph_exact(g, range(0, m), range(m, 2 * m), degree);
      EXPECT_TRUE(expected);
      EXPECT_TRUE(regular_on(h, range(0, 2 * m), degree));
      EXPECT_TRUE(g.contains(h));
      ++feasible;
    } catch (const CutViolation& e) {
      EXPECT_FALSE(expected);
      EXPECT_TRUE(witness_violates_cut_bound(g, range(m, 2 * m), e.witness()));
      ++infeasible;
    }
  }
  EXPECT_GT(feasible, 0);
  EXPECT_GT(infeasible, 0);
}

TEST(RegularSubgraph, DegreeTargetIsFloored) {
  EXPECT_EQ(regular_degree_target(200, 0.1, 0.05), 170);
  EXPECT_EQ(regular_degree_target(10, 0.0, 0.2), 8);
  EXPECT_EQ(regular_degree_target(40, 0.2, 0.1), 28);
}

TEST(MatchingDecomposition, SmallCases) {
  Multigraph one(4);
  one.add_edge(0, 2);
  one.add_edge(1, 3);
  const auto single = regular_bipartite_to_matchings(one, range(0, 2), range(2, 4));
  ASSERT_EQ(single.size(), 1u);
  EXPECT_EQ(single[0], one);

  // C8 on left {0..3}, right {4..7}.
  Multigraph c8(8);
  const int order[] = {0, 4, 1, 5, 2, 6, 3, 7};
  for (int t = 0; t < 8; ++t) c8.add_edge(order[t], order[(t + 1) % 8]);
  const auto parts = regular_bipartite_to_matchings(c8, range(0, 4), range(4, 8));
  ASSERT_EQ(parts.size(), 2u);
  EXPECT_EQ(parts[0] + parts[1], c8);
  for (const auto& p : parts) EXPECT_TRUE(regular_on(p, range(0, 8), 1));
}

TEST(MatchingDecomposition, RandomRegularUnionIsExact) {
  Rng rng(4);
  for (int degree : {3, 5, 8}) {
    const int m = 50;
    Multigraph g(2 * m);
    for (const auto& [l, r] : random_regular_pair(m, degree, rng)) g.add_edge(l, m + r);
    const auto parts = regular_bipartite_to_matchings(g, range(0, m), range(m, 2 * m));
    ASSERT_EQ(static_cast<int>(parts.size()), degree);
    Multigraph sum(2 * m);
    for (const auto& p : parts) {
      EXPECT_TRUE(regular_on(p, range(0, 2 * m), 1));
      sum += p;
    }
    EXPECT_EQ(sum, g);
  }
}

TEST(MatchingDecomposition, MultigraphWithParallelEdges) {
  Multigraph r(4);
  r.add_edge(0, 2, 2);
  r.add_edge(1, 3, 2);
  const auto parts = regular_bipartite_to_matchings(r, range(0, 2), range(2, 4));
  ASSERT_EQ(parts.size(), 2u);
  EXPECT_EQ(parts[0] + parts[1], r);
}

TEST(SplitRegular, ThreeTwoFactorsOfSixRegular) {
  const int m = 6;
  Multigraph g(2 * m);
  Rng rng(8);
  for (const auto& [l, r] : random_regular_pair(m, 6, rng)) g.add_edge(l, m + r);
  const auto parts = split_regular(g, range(0, m), range(m, 2 * m), 3, 2);
  ASSERT_EQ(parts.size(), 3u);
  Multigraph sum(2 * m);
  for (const auto& p : parts) {
    EXPECT_TRUE(regular_on(p, range(0, 2 * m), 2));
    sum += p;
  }
  EXPECT_EQ(sum, g);
}

TEST(SplitRegular, IdentityAndOverdraw) {
  const auto g = complete_bipartite(4);
  const auto whole = split_regular(g, range(0, 4), range(4, 8), 1, 4);
  ASSERT_EQ(whole.size(), 1u);
  EXPECT_EQ(whole[0], g);
  try {
    split_regular(g, range(0, 4), range(4, 8), 2, 4);
    FAIL() << "expected InvalidParameter";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidParameter);
  }
}

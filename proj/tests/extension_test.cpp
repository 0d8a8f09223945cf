#include <gtest/gtest.h>

#include <numeric>
#include <set>

#include "hamdec/classic.hpp"
#include "hamdec/extension.hpp"
#include "hamdec/generator.hpp"

using namespace hamdec;

namespace {

ClusterPartition equipartition(int clusters, int m) {
  std::vector<std::vector<Vertex>> parts(clusters);
  for (int c = 0; c < clusters; ++c) {
    parts[c].resize(m);
    std::iota(parts[c].begin(), parts[c].end(), c * m);
  }
  return ClusterPartition::plain(clusters * m, parts);
}

void add_regular(Multigraph& g, const ClusterPartition& q, int x, int y, int degree, Rng& rng) {
  const int m = q.cluster_size();
  for (auto [i, j] : random_regular_pair(m, degree, rng)) g.add_edge(q.cluster(x)[i], q.cluster(y)[j]);
}

// Random directed matching with `size` arcs inside `tails` x `heads`.
OrderedDirectedMatching random_matching(const std::vector<Vertex>& tails, const std::vector<Vertex>& heads,
                                        int size, Rng& rng) {
  std::vector<Vertex> pool_t = tails, pool_h = heads;
  rng.shuffle(pool_t);
  rng.shuffle(pool_h);
  std::set<Vertex> used;
  OrderedDirectedMatching out;
  std::size_t ti = 0, hi = 0;
  while (static_cast<int>(out.size()) < size) {
    while (used.count(pool_t[ti])) ++ti;
    const Vertex t = pool_t[ti++];
    used.insert(t);
    while (used.count(pool_h[hi])) ++hi;
    const Vertex h = pool_h[hi++];
    used.insert(h);
    out.push_back({t, h});
  }
  return out;
}

struct CliqueSetup {
  ClusterPartition q = equipartition(5, 40);
  ClusterCycle cycle{std::vector<int>{0, 1, 2, 3, 4}};
  Multigraph reserve{200};
};

CliqueSetup clique_setup(int degree, Rng& rng) {
  CliqueSetup s;
  for (int i = 0; i < 5; ++i) add_regular(s.reserve, s.q, s.cycle.prev(i), s.cycle.next(i), degree, rng);
  return s;
}

}  // namespace

TEST(CliqueExtension, RandomRequestsAreBalanced) {
  Rng rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    auto s = clique_setup(8, rng);
    std::vector<CliqueExtensionRequest> requests;
    for (int t = 0; t < 12; ++t) {
      const int cluster = static_cast<int>(rng.below(5));
      const auto& c = s.q.cluster(cluster);
      requests.push_back({random_matching(c, c, 1 + static_cast<int>(rng.below(4)), rng), cluster});
    }
    const auto out = balance_extend_cliques(requests, s.q, s.cycle, s.reserve);
    EXPECT_DOUBLE_EQ(out.extension.eps, 0.2);
    EXPECT_EQ(out.extension.ell, 3);
    EXPECT_EQ(check_balanced_extension(out.extension, s.q, s.cycle), std::vector<std::string>{});
    for (std::size_t t = 0; t < requests.size(); ++t) {
      const auto& ps = out.extension.sequences[t];
      for (const Arc& a : requests[t].matching) EXPECT_TRUE(ps.has_arc(a));
      EXPECT_EQ(ps.arc_count(), 2 * static_cast<long long>(requests[t].matching.size()));
      EXPECT_TRUE(is_locally_balanced(ps, s.q, s.cycle));
      // Added arcs come from the reserve and follow its orientation.
      for (const Arc& a : ps.arcs()) {
        if (std::find(requests[t].matching.begin(), requests[t].matching.end(), a) != requests[t].matching.end()) continue;
        EXPECT_TRUE(s.reserve.has_edge(a.tail, a.head));
        EXPECT_TRUE(out.oriented_reserve.has_arc(a));
      }
    }
    EXPECT_EQ(out.oriented_reserve.underlying(), s.reserve);
  }
}

TEST(CliqueExtension, EmptyRequestGivesEmptySequence) {
  Rng rng(3);
  auto s = clique_setup(8, rng);
  const std::vector<CliqueExtensionRequest> requests{{{}, 2}};
  const auto out = balance_extend_cliques(requests, s.q, s.cycle, s.reserve);
  EXPECT_EQ(out.extension.sequences.at(0).arc_count(), 0);
  EXPECT_TRUE(check_balanced_extension(out.extension, s.q, s.cycle).empty());
}

TEST(CliqueExtension, Failures) {
  Rng rng(5);
  auto s = clique_setup(8, rng);
  const auto& c = s.q.cluster(1);
  // Chunks hold ceil(0.1 * 40) = 4 edges.
  const std::vector<CliqueExtensionRequest> too_big{{random_matching(c, c, 5, rng), 1}};
  EXPECT_THROW(balance_extend_cliques(too_big, s.q, s.cycle, s.reserve), Error);
  // Matching leaving its cluster.
  const std::vector<CliqueExtensionRequest> outside{{{{c[0], s.q.cluster(2)[0]}}, 1}};
  EXPECT_THROW(balance_extend_cliques(outside, s.q, s.cycle, s.reserve), Error);
  // Irregular reserve.
  auto broken = s.reserve;
  broken.remove_edge(broken.edge_list().front().u, broken.edge_list().front().v);
  const std::vector<CliqueExtensionRequest> one{{random_matching(c, c, 1, rng), 1}};
  try {
    balance_extend_cliques(one, s.q, s.cycle, broken);
    FAIL() << "expected ReservoirExhausted";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ReservoirExhausted);
  }
}

TEST(CliqueExtension, CheckerCatchesTampering) {
  Rng rng(8);
  auto s = clique_setup(8, rng);
  const auto& c = s.q.cluster(3);
  const std::vector<CliqueExtensionRequest> requests{{random_matching(c, c, 3, rng), 3},
                                                     {random_matching(c, c, 2, rng), 3}};
  auto be = balance_extend_cliques(requests, s.q, s.cycle, s.reserve).extension;
  ASSERT_TRUE(check_balanced_extension(be, s.q, s.cycle).empty());
  auto unbalanced = be;
  for (const Arc& a : unbalanced.sequences[0].arcs()) {
    if (s.q.cluster_of(a.tail) != 3) {
      unbalanced.sequences[0].remove_arc(a);
      break;
    }
  }
  EXPECT_FALSE(check_balanced_extension(unbalanced, s.q, s.cycle).empty());
  auto shared = be;
  for (const Arc& a : be.sequences[0].arcs()) {
    if (s.q.cluster_of(a.tail) != 3) shared.sequences[1].add_arc(a);
  }
  EXPECT_FALSE(check_balanced_extension(shared, s.q, s.cycle).empty());
  auto wrong_home = be;
  wrong_home.extension_cluster[0] = 0;
  EXPECT_FALSE(check_balanced_extension(wrong_home, s.q, s.cycle).empty());
  auto crowded = be;
  crowded.ell = 0.01;
  EXPECT_FALSE(check_balanced_extension(crowded, s.q, s.cycle).empty());
}

TEST(BipartiteExtension, RandomRequestsAreBalanced) {
  Rng rng(31);
  const int K = 2, m = 40;
  const auto q = equipartition(2 * K, m);
  const auto cycle = bipartite_hamilton_decompose(K).at(0);
  for (int trial = 0; trial < 10; ++trial) {
    Multigraph reserve(q.vertex_count());
    for (int a = 0; a < K; ++a)
      for (int b = K; b < 2 * K; ++b) add_regular(reserve, q, a, b, 12, rng);
    std::vector<BipartiteExtensionRequest> requests;
    for (int t = 0; t < 6; ++t) {
      const int a1 = static_cast<int>(rng.below(K)), a2 = static_cast<int>(rng.below(K));
      const int b1 = K + static_cast<int>(rng.below(K)), b2 = K + static_cast<int>(rng.below(K));
      std::vector<Vertex> tails = q.cluster(a1), heads = q.cluster(b1);
      if (a2 != a1) tails.insert(tails.end(), q.cluster(a2).begin(), q.cluster(a2).end());
      if (b2 != b1) heads.insert(heads.end(), q.cluster(b2).begin(), q.cluster(b2).end());
      requests.push_back({random_matching(tails, heads, 1 + static_cast<int>(rng.below(2)), rng), {a1, a2, b1, b2}});
    }
    const auto out = balance_extend_bipartite(requests, q, cycle, reserve, {4, 10, 0.02});
    EXPECT_EQ(out.extension.ell, 12);
    EXPECT_DOUBLE_EQ(out.extension.eps, 12 * 0.02 * K);
    EXPECT_EQ(check_balanced_extension(out.extension, q, cycle), std::vector<std::string>{});
    for (std::size_t t = 0; t < requests.size(); ++t) {
      const auto& ps = out.extension.sequences[t];
      for (const Arc& a : requests[t].matching) EXPECT_TRUE(ps.has_arc(a));
      // Each fictive arc gains an attaching arc and two balancing arcs.
      EXPECT_EQ(ps.arc_count(), 4 * static_cast<long long>(requests[t].matching.size()));
      EXPECT_EQ(out.extension.extension_cluster[t], requests[t].clusters[0]);
    }
    EXPECT_EQ(out.oriented_reserve.underlying(), reserve);
  }
}

TEST(BipartiteExtension, Failures) {
  Rng rng(2);
  const int K = 2, m = 20;
  const auto q = equipartition(2 * K, m);
  const auto cycle = bipartite_hamilton_decompose(K).at(0);
  Multigraph reserve(q.vertex_count());
  for (int a = 0; a < K; ++a)
    for (int b = K; b < 2 * K; ++b) add_regular(reserve, q, a, b, 3, rng);
  const std::vector<BipartiteExtensionRequest> reversed{{{{q.cluster(2)[0], q.cluster(0)[0]}}, {0, 0, 2, 2}}};
  EXPECT_THROW(balance_extend_bipartite(reversed, q, cycle, reserve, {1, 5, 0.01}), Error);
  const std::vector<BipartiteExtensionRequest> fine{{{{q.cluster(0)[0], q.cluster(2)[0]}}, {0, 0, 2, 2}}};
  EXPECT_THROW(balance_extend_bipartite(fine, q, cycle, reserve, {4, 5, 0.01}), Error);  // phase one > 3
  EXPECT_THROW(balance_extend_bipartite(fine, q, cycle, reserve, {1, 0, 0.01}), Error);
  EXPECT_NO_THROW(balance_extend_bipartite(fine, q, cycle, reserve, {1, 5, 0.01}));
}

#include <gtest/gtest.h>

#include <numeric>
#include <set>

#include "hamdec/classic.hpp"
#include "hamdec/cyclic.hpp"
#include "hamdec/generator.hpp"
#include "hamdec/superregular.hpp"

using namespace hamdec;

namespace {

std::vector<Vertex> range(int from, int to) {
  std::vector<Vertex> out(to - from);
  std::iota(out.begin(), out.end(), from);
  return out;
}

Multigraph complete_pair(int m) {
  Multigraph g(2 * m);
  for (int u = 0; u < m; ++u)
    for (int v = m; v < 2 * m; ++v) g.add_edge(u, v);
  return g;
}

Digraph complete_digraph(int n) {
  Digraph d(n);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (u != v) d.add_arc(u, v);
  return d;
}

void expect_regular(const Multigraph& h, std::span<const Vertex> left, std::span<const Vertex> right, int degree) {
  for (Vertex v : left) EXPECT_EQ(h.degree_into(v, right), degree);
  for (Vertex v : right) EXPECT_EQ(h.degree_into(v, left), degree);
}

}  // namespace

TEST(Superregular, CompletePairPassesEverything) {
  const auto g = complete_pair(8);
  const auto left = range(0, 8), right = range(8, 16);
  const auto r = check_superregular(g, left, right, {0.1, 1.0, 0.9, 1.0}, 5);
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.reg1_mode, CheckMode::Exhaustive);
  EXPECT_EQ(r.max_codegree, 8);
  EXPECT_EQ(r.min_degree, 8);
  EXPECT_NEAR(r.worst_density_deviation, 0.0, 1e-12);
}

TEST(Superregular, EmptyPairFailsMinimumDegree) {
  const Multigraph g(16);
  const auto left = range(0, 8), right = range(8, 16);
  const auto r = check_superregular(g, left, right, {0.1, 0.5, 0.25, 1.0}, 5);
  EXPECT_FALSE(r.reg4);
  EXPECT_FALSE(r.ok());
  EXPECT_EQ(r.max_degree, 0);
}

TEST(Superregular, MaxDegreeCap) {
  const auto g = complete_pair(8);
  const auto left = range(0, 8), right = range(8, 16);
  const auto r = check_superregular(g, left, right, {0.1, 1.0, 0.5, 0.5}, 5);
  EXPECT_FALSE(r.reg3);  // degree 8 > 0.5 * 8
  EXPECT_FALSE(r.reg2);  // codegree 8 > 0.25 * 8
}

TEST(Expander, CompleteDigraphExpands) {
  const auto r = check_robust_outexpander(complete_digraph(12), 0.05, 0.2, 3);
  EXPECT_TRUE(r.expander);
  EXPECT_EQ(r.mode, CheckMode::Exhaustive);
  EXPECT_GT(r.sets_tested, 0);
}

TEST(Expander, DirectedCycleDoesNot) {
  std::vector<Vertex> order = range(0, 10);
  EXPECT_FALSE(check_robust_outexpander(digraph_from_cycle(10, order), 0.05, 0.2, 3).expander);
}

TEST(Reservoir, RegularReserveHasExactDegree) {
  Rng rng(4);
  const int m = 30;
  Multigraph g(2 * m);
  for (auto [x, y] : random_regular_pair(m, 20, rng)) g.add_edge(x, m + y);
  const auto left = range(0, m), right = range(m, 2 * m);
  for (int degree : {0, 3, 7, 20}) {
    const auto h = reserve_regular(g, left, right, degree, 9);
    expect_regular(h, left, right, degree);
    EXPECT_TRUE(g.contains(h));
  }
  EXPECT_EQ(reserve_regular(g, left, right, 7, 9), reserve_regular(g, left, right, 7, 9));
  EXPECT_THROW(reserve_regular(g, left, right, 21, 9), Error);
}

TEST(Reservoir, SparseSamplingFailsFastOnTinyPairs) {
  const auto g = complete_pair(4);
  const auto left = range(0, 4), right = range(4, 8);
  try {
    reserve_sparse(g, left, right, 0.0, 0.01, 0.01, 1, 3);
    FAIL() << "expected SamplingFailed";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SamplingFailed);
  }
}

TEST(Reservoir, SparseSplitsThePair) {
  const auto g = complete_pair(200);
  const auto left = range(0, 200), right = range(200, 400);
  const auto r = reserve_sparse(g, left, right, 0.0, 0.15, 0.1, 7);
  EXPECT_EQ(r.reservoir + r.rest, g);
  EXPECT_TRUE(r.report.exact_ok());
  for (Vertex v : left) {
    EXPECT_GE(r.rest.degree(v), (1 - 0.6) * 200);
    EXPECT_LE(r.rest.degree(v), (1 + 0.6) * 200);
  }
}

TEST(Slices, RoundRobinWithinLocality) {
  std::vector<ExceptionalSystem> systems(7);
  for (int s = 0; s < 7; ++s) systems[s].locality = {s % 2, 0};
  const auto slice = assign_slices(systems, 3);
  std::map<std::vector<int>, std::vector<int>> per_group;
  for (int s = 0; s < 7; ++s) per_group[systems[s].locality].push_back(slice[s]);
  for (const auto& [group, slices] : per_group) {
    std::map<int, int> count;
    for (int j : slices) ++count[j];
    int lo = 100, hi = 0;
    for (int j = 0; j < 3; ++j) lo = std::min(lo, count[j]), hi = std::max(hi, count[j]);
    EXPECT_LE(hi - lo, 1);
  }
}

TEST(Slices, AsymptoticReserves) {
  EXPECT_EQ(asymptotic_reserve_two_cliques(5, 40, 0.01), 200);
  EXPECT_EQ(asymptotic_reserve_bipartite(4, 40, 0.02), 84);
}

namespace {

void expect_slice_invariants(const SliceSystem& slice, int reserve_degree) {
  EXPECT_EQ(check_cyclic_system(slice.system), "");
  const auto& q = slice.system.clusters;
  // Reserve is regular between consecutive clusters and arc-disjoint from the system.
  for (const auto& [from, to] : slice.system.cycle.edges()) {
    expect_regular(slice.reserve.between(q.cluster(from), q.cluster(to)), q.cluster(from), q.cluster(to),
                   reserve_degree);
  }
  const auto u = slice.system.graph.underlying();
  for (const auto& e : slice.reserve.entries()) EXPECT_FALSE(u.has_edge(e.u, e.v));
  EXPECT_EQ(slice.members.size(), slice.matchings.size());
  EXPECT_EQ(slice.members.size(), slice.member_cluster.size());
}

}  // namespace

TEST(Sysdecom, TwoCliquesInvariants) {
  const auto inst = generate_instance(default_config(PartitionMode::TwoCliques));
  const DecompositionParams params{0.05, 0.1, 0.01, 4};
  const auto d = sysdecom(inst.graph, inst.partition, inst.systems, params);
  ASSERT_EQ(d.a_side.size(), 2u);
  ASSERT_EQ(d.b_side.size(), 2u);
  EXPECT_EQ(d.reserve_degree, 4);
  EXPECT_TRUE(d.checks.cyclic_ok);
  EXPECT_TRUE(d.checks.disjoint_ok);
  EXPECT_TRUE(d.checks.reserve_regular);
  std::vector<int> seen(inst.systems.size(), 0);
  Multigraph used(inst.partition.vertex_count());
  for (const auto* side : {&d.a_side, &d.b_side}) {
    for (const auto& slice : *side) {
      expect_slice_invariants(slice, 4);
      for (int s : slice.members) ++seen[s];
      used += slice.system.graph.underlying();
      used += slice.reserve;
    }
  }
  for (int count : seen) EXPECT_EQ(count, 2);  // once per side
  EXPECT_TRUE(inst.graph.contains(used));
}

TEST(Sysdecom, BipartiteInvariants) {
  const auto inst = generate_instance(default_config(PartitionMode::Bipartite));
  const DecompositionParams params{0.05, 0.1, 0.02, 13};
  const auto d = sysdecombip(inst.graph, inst.partition, inst.systems, params);
  ASSERT_EQ(d.slices.size(), 2u);
  EXPECT_TRUE(d.checks.cyclic_ok);
  EXPECT_TRUE(d.checks.disjoint_ok);
  std::vector<int> seen(inst.systems.size(), 0);
  Multigraph used(inst.partition.vertex_count());
  for (const auto& slice : d.slices) {
    expect_slice_invariants(slice, 13);
    for (int s : slice.members) ++seen[s];
    used += slice.system.graph.underlying();
    used += slice.reserve;
  }
  for (int count : seen) EXPECT_EQ(count, 1);
  EXPECT_TRUE(inst.graph.contains(used));
}

TEST(Sysdecom, RejectsWrongMode) {
  const auto inst = generate_instance(default_config(PartitionMode::Bipartite));
  EXPECT_THROW(sysdecom(inst.graph, inst.partition, inst.systems, {}), Error);
}

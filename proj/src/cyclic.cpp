#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "hamdec/classic.hpp"
#include "hamdec/cyclic.hpp"

namespace hamdec {

namespace {
constexpr double kTol = 1e-9;
}

std::string check_cyclic_system(const CyclicSystem& system) {
  const auto& q = system.clusters;
  const int k = q.cluster_count();
  const int m = q.cluster_size();
  if (q.mode() != PartitionMode::Plain) return "cluster partition is not an equipartition";
  if (system.cycle.size() != k) return "cluster cycle does not cover every cluster";
  try {
    if (!winds_around(system.graph, q, system.cycle)) return "digraph does not wind around the cycle";
  } catch (const Error& e) {
    return e.detail();
  }
  const double lo = (1.0 - system.mu - system.eps) * m - kTol;
  const double hi = (1.0 - system.mu + system.eps) * m + kTol;
  for (const auto& [from, to] : system.cycle.edges()) {
    const auto& cu = q.cluster(from);
    const auto& cw = q.cluster(to);
    for (Vertex u : cu) {
      int d = 0;
      for (Vertex w : system.graph.out(u)) d += q.cluster_of(w) == to;
      if (d < lo || d > hi) return "outdegree " + std::to_string(d) + " of vertex " + std::to_string(u) + " outside window";
    }
    for (Vertex w : cw) {
      int d = 0;
      for (Vertex u : system.graph.in(w)) d += q.cluster_of(u) == from;
      if (d < lo || d > hi) return "indegree " + std::to_string(d) + " of vertex " + std::to_string(w) + " outside window";
    }
  }
  return {};
}

std::vector<int> assign_slices(std::span<const ExceptionalSystem> systems, int slices) {
  std::vector<int> order(systems.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
    return systems[x].locality < systems[y].locality;
  });
  std::vector<int> slice(systems.size(), 0);
  int counter = 0;
  for (int s : order) slice[s] = counter++ % slices;
  return slice;
}

int asymptotic_reserve_two_cliques(int K, int m, double eps0) {
  return static_cast<int>(std::floor(10.0 * K * std::sqrt(eps0) * m + kTol));
}

int asymptotic_reserve_bipartite(int K, int m, double eps0) {
  return static_cast<int>(std::floor((11.0 * K + 248.0 / K) * eps0 * m + kTol));
}

namespace {

// Orients the remainder of every cycle pair from a cluster to its successor.
Digraph orient_along(const ClusterCycle& cycle, const std::map<std::pair<int, int>, Multigraph>& remainder,
                     int vertex_count, const ClusterPartition& q) {
  Digraph d(vertex_count);
  for (const auto& [from, to] : cycle.edges()) {
    const auto key = std::minmax(from, to);
    const auto& pair = remainder.at({key.first, key.second});
    for (const auto& e : pair.entries()) {
      if (e.multiplicity != 1) fail(ErrorKind::MalformedInput, "cyclic systems need a simple host graph");
      const bool forward = q.cluster_of(e.u) == from;
      d.add_arc(forward ? e.u : e.v, forward ? e.v : e.u);
    }
  }
  return d;
}

struct PairSplit {
  std::map<std::pair<int, int>, Multigraph> remainder;  // keyed by Q indices
  std::vector<Multigraph> reserves;
};

PairSplit split_pair_graphs(const Multigraph& g, const ClusterPartition& q,
                            const std::vector<std::pair<int, int>>& pairs, int slices,
                            int reserve, double mu4, double rho) {
  PairSplit out;
  out.reserves.assign(slices, Multigraph(g.vertex_count()));
  for (const auto& [x, y] : pairs) {
    const auto& left = q.cluster(x);
    const auto& right = q.cluster(y);
    Multigraph pair = g.between(left, right);
    Multigraph regular(g.vertex_count());
    try {
      regular = regular_spanning_subgraph(pair, left, right, mu4, rho);
    } catch (Error& e) {
      e.add_stage("regular pair " + std::to_string(x) + "-" + std::to_string(y));
      throw;
    }
    auto parts = split_regular(regular, left, right, slices, reserve);
    for (int j = 0; j < slices; ++j) {
      out.reserves[j] += parts[j];
      pair -= parts[j];
    }
    out.remainder.emplace(std::make_pair(std::min(x, y), std::max(x, y)), std::move(pair));
  }
  return out;
}

bool pair_regular(const Multigraph& h, const std::vector<Vertex>& left, const std::vector<Vertex>& right,
                  int degree) {
  for (Vertex v : left) {
    if (h.degree_into(v, right) != degree) return false;
  }
  for (Vertex v : right) {
    if (h.degree_into(v, left) != degree) return false;
  }
  return true;
}

void require_reserve_fits(int reserve, int slices, int pair_degree) {
  if (reserve < 0) fail(ErrorKind::InvalidParameter, "negative reserve degree");
  if (static_cast<long long>(reserve) * slices > pair_degree) {
    fail(ErrorKind::InvalidParameter,
         std::to_string(slices) + " reserves of degree " + std::to_string(reserve) +
             " exceed the regular pair degree " + std::to_string(pair_degree) +
             "; lower reserve_degree or raise m");
  }
}

}  // namespace

TwoCliquesDecomposition sysdecom(const Multigraph& g, const ClusterPartition& p,
                                 std::span<const ExceptionalSystem> systems,
                                 const DecompositionParams& params) {
  if (p.mode() != PartitionMode::TwoCliques) fail(ErrorKind::InvalidParameter, "sysdecom needs a two-cliques partition");
  const int K = p.side_cluster_count();
  const int m = p.cluster_size();
  if (K < 3 || K % 2 == 0) fail(ErrorKind::InvalidParameter, "two-cliques decomposition needs odd K >= 3");
  const int slices = (K - 1) / 2;

  TwoCliquesDecomposition out;
  for (const auto& system : systems) {
    if (system.locality.size() != 2) {
      fail(ErrorKind::InvalidParameter, "every system needs an (i, i') locality tag");
    }
    out.reductions.push_back(build_fictive_two_cliques(system, p));
  }
  const auto slice_of = assign_slices(systems, slices);
  out.pair_degree = regular_degree_target(m, 4 * params.mu, params.rho);
  out.reserve_degree = params.reserve_degree.value_or(asymptotic_reserve_two_cliques(K, m, params.eps0));
  require_reserve_fits(out.reserve_degree, slices, out.pair_degree);

  const auto cycles = walecki_decompose(K);
  const double size_bound = (1.0 - 4 * params.mu - 3 * params.rho) * m / K;
  const double edge_bound = 5.0 * K * std::sqrt(params.eps0) * m;

  for (int side = 0; side < 2; ++side) {
    std::vector<int> indices(K);
    for (int i = 0; i < K; ++i) indices[i] = side == 0 ? p.a_cluster(i) : p.b_cluster(i);
    const ClusterPartition q = p.restrict_to(indices);
    std::vector<std::pair<int, int>> pairs;
    for (int x = 0; x < K; ++x) {
      for (int y = x + 1; y < K; ++y) pairs.emplace_back(x, y);
    }
    auto split = split_pair_graphs(g, q, pairs, slices, out.reserve_degree,
                                   4 * params.mu, params.rho);
    auto& target = side == 0 ? out.a_side : out.b_side;
    Multigraph used(g.vertex_count());
    for (int j = 0; j < slices; ++j) {
      SliceSystem slice;
      slice.system = CyclicSystem{orient_along(cycles[j], split.remainder, g.vertex_count(), q), q,
                                  cycles[j], 4 * params.mu, 5.0 / K};
      slice.reserve = std::move(split.reserves[j]);
      std::vector<int> per_cluster(K, 0);
      for (int s = 0; s < static_cast<int>(systems.size()); ++s) {
        if (slice_of[s] != j) continue;
        const auto& red = out.reductions[s];
        const int cluster = systems[s].locality[side];
        slice.members.push_back(s);
        slice.matchings.push_back(side == 0 ? red.a_dir : red.b_dir);
        slice.member_cluster.push_back(cluster);
        ++per_cluster[cluster];
        if (static_cast<double>(slice.matchings.back().size()) > edge_bound + kTol) {
          out.checks.matching_sizes_ok = false;
        }
      }
      for (int i = 0; i < K; ++i) {
        if (per_cluster[i] > size_bound + kTol) {
          out.checks.sizes_ok = false;
          out.checks.notes.push_back("slice " + std::to_string(j) + " cluster " + std::to_string(i) +
                                     " holds " + std::to_string(per_cluster[i]) + " matchings");
        }
      }
      for (const auto& [x, y] : pairs) {
        if (!pair_regular(slice.reserve, q.cluster(x), q.cluster(y), out.reserve_degree)) {
          out.checks.reserve_regular = false;
        }
      }
      if (auto why = check_cyclic_system(slice.system); !why.empty()) {
        out.checks.cyclic_ok = false;
        out.checks.notes.push_back(why);
      }
      used += slice.system.graph.underlying();
      used += slice.reserve;
      target.push_back(std::move(slice));
    }
    const auto side_vertices = side == 0 ? p.a_vertices() : p.b_vertices();
    if (!g.induced(side_vertices).contains(used)) out.checks.disjoint_ok = false;
  }
  return out;
}

BipartiteDecomposition sysdecombip(const Multigraph& g, const ClusterPartition& p,
                                   std::span<const ExceptionalSystem> systems,
                                   const DecompositionParams& params) {
  if (p.mode() != PartitionMode::Bipartite) fail(ErrorKind::InvalidParameter, "sysdecombip needs a bipartite partition");
  const int K = p.side_cluster_count();
  const int m = p.cluster_size();
  if (K < 2 || K % 2 != 0) fail(ErrorKind::InvalidParameter, "bipartite decomposition needs even K >= 2");
  const int slices = K / 2;

  BipartiteDecomposition out;
  for (const auto& system : systems) {
    if (system.locality.size() != 4) {
      fail(ErrorKind::InvalidParameter, "every balanced system needs an (i1, i2, i3, i4) tag");
    }
    out.reductions.push_back(build_fictive_bipartite(system, p));
  }
  const auto slice_of = assign_slices(systems, slices);
  out.pair_degree = regular_degree_target(m, 4 * params.mu, params.rho);
  out.reserve_degree = params.reserve_degree.value_or(asymptotic_reserve_bipartite(K, m, params.eps0));
  require_reserve_fits(out.reserve_degree, slices, out.pair_degree);

  std::vector<int> indices(2 * K);
  std::iota(indices.begin(), indices.end(), 0);
  const ClusterPartition q = p.restrict_to(indices);
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < K; ++a) {
    for (int b = 0; b < K; ++b) pairs.emplace_back(p.a_cluster(a), p.b_cluster(b));
  }
  auto split = split_pair_graphs(g, q, pairs, slices, out.reserve_degree,
                                 4 * params.mu, params.rho);
  const auto cycles = bipartite_hamilton_decompose(K);
  const double size_bound = (1.0 - 4 * params.mu - 3 * params.rho) * m / std::pow(K, 4);
  Multigraph used(g.vertex_count());
  for (int j = 0; j < slices; ++j) {
    SliceSystem slice;
    slice.system = CyclicSystem{orient_along(cycles[j], split.remainder, g.vertex_count(), q), q,
                                cycles[j], 4 * params.mu, 5.0 / K};
    slice.reserve = std::move(split.reserves[j]);
    std::map<std::vector<int>, int> per_tuple;
    for (int s = 0; s < static_cast<int>(systems.size()); ++s) {
      if (slice_of[s] != j) continue;
      slice.members.push_back(s);
      slice.matchings.push_back(out.reductions[s].dir);
      slice.member_cluster.push_back(p.a_cluster(systems[s].locality[0]));
      ++per_tuple[systems[s].locality];
      if (static_cast<long long>(out.reductions[s].dir.size()) > systems[s].edge_count()) {
        out.checks.matching_sizes_ok = false;
      }
    }
    for (const auto& [tuple, count] : per_tuple) {
      if (count > size_bound + kTol) {
        out.checks.sizes_ok = false;
        out.checks.notes.push_back("slice " + std::to_string(j) + " holds " + std::to_string(count) +
                                   " systems of one tuple against a bound of " +
                                   std::to_string(size_bound));
      }
    }
    for (const auto& [x, y] : pairs) {
      if (!pair_regular(slice.reserve, q.cluster(x), q.cluster(y), out.reserve_degree)) {
        out.checks.reserve_regular = false;
      }
    }
    if (auto why = check_cyclic_system(slice.system); !why.empty()) {
      out.checks.cyclic_ok = false;
      out.checks.notes.push_back(why);
    }
    used += slice.system.graph.underlying();
    used += slice.reserve;
    out.slices.push_back(std::move(slice));
  }
  if (!g.between(p.a_vertices(), p.b_vertices()).contains(used)) out.checks.disjoint_ok = false;
  return out;
}

}  // namespace hamdec

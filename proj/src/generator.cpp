#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "hamdec/generator.hpp"

namespace hamdec {

namespace {

constexpr double kTol = 1e-9;

// Per (exceptional vertex, cluster) queues of unused neighbours.
class NeighbourPools {
 public:
  NeighbourPools(const ClusterPartition& p, Rng& rng) : p_(p), rng_(rng) {}

  Vertex draw(Vertex exceptional, int cluster, std::set<Vertex>& used) {
    auto it = pools_.find({exceptional, cluster});
    if (it == pools_.end()) {
      auto members = p_.cluster(cluster);
      rng_.shuffle(members);
      it = pools_.emplace(std::make_pair(exceptional, cluster), std::move(members)).first;
    }
    auto& pool = it->second;
    for (auto v = pool.begin(); v != pool.end(); ++v) {
      if (used.insert(*v).second) {
        const Vertex out = *v;
        pool.erase(v);
        return out;
      }
    }
    fail(ErrorKind::InvalidParameter, "exceptional vertex " + std::to_string(exceptional) +
                                          " ran out of fresh neighbours in cluster " +
                                          std::to_string(cluster) + "; lower |J| or raise m");
  }

 private:
  const ClusterPartition& p_;
  Rng& rng_;
  std::map<std::pair<Vertex, int>, std::vector<Vertex>> pools_;
};

void check_config(const InstanceConfig& c) {
  const bool cliques = c.mode == PartitionMode::TwoCliques;
  if (!cliques && c.mode != PartitionMode::Bipartite) fail(ErrorKind::InvalidParameter, "mode must be two-cliques or bipartite");
  if (cliques && (c.K < 3 || c.K % 2 == 0)) fail(ErrorKind::InvalidParameter, "two-cliques needs odd K >= 3");
  if (!cliques && (c.K < 2 || c.K % 2 != 0)) fail(ErrorKind::InvalidParameter, "bipartite needs even K >= 2");
  if (c.m < 2) fail(ErrorKind::InvalidParameter, "cluster size must be at least 2");
  if (c.a0 < 0 || c.b0 < 0 || c.systems < 0) fail(ErrorKind::InvalidParameter, "negative count");
  if (c.systems > 0 && c.a0 + c.b0 == 0) fail(ErrorKind::InvalidParameter, "systems need exceptional vertices");
  const double bound = (0.25 - c.mu - c.rho) * c.vertex_count();
  if (c.systems > bound + kTol) {
    fail(ErrorKind::InvalidParameter, "|J| = " + std::to_string(c.systems) + " exceeds (1/4 - mu - rho) n = " +
                                          std::to_string(bound));
  }
  if (cliques) {
    if (c.hes < 0 || c.hes > c.systems) fail(ErrorKind::InvalidParameter, "HES count out of range");
    if (c.hes > 0 && (c.a0 == 0 || c.b0 == 0)) {
      fail(ErrorKind::InvalidParameter, "Hamilton systems need exceptional vertices on both sides");
    }
    const int a_prime = c.a0 + c.K * c.m;
    const int b_prime = c.b0 + c.K * c.m;
    if (c.hes < c.systems && (a_prime != b_prime || a_prime % 2 != 0)) {
      fail(ErrorKind::InvalidParameter, "matching systems need |A'| = |B'| even");
    }
  } else if (c.a0 != c.b0) {
    fail(ErrorKind::InvalidParameter, "balanced systems here need |A0| = |B0|");
  }
}

}  // namespace

InstanceConfig default_config(PartitionMode mode) {
  InstanceConfig c;
  if (mode == PartitionMode::Bipartite) {
    c.mode = mode;
    c.K = 4;
    c.a0 = 1;
    c.b0 = 1;
    c.eps0 = 0.02;
    c.systems = 16;
    c.hes = 0;
  }
  return c;
}

std::vector<std::pair<int, int>> random_regular_pair(int m, int degree, Rng& rng) {
  if (degree < 0 || degree > m) fail(ErrorKind::InvalidParameter, "pair degree out of range");
  std::vector<int> offsets(m), left(m), right(m);
  std::iota(offsets.begin(), offsets.end(), 0);
  std::iota(left.begin(), left.end(), 0);
  std::iota(right.begin(), right.end(), 0);
  rng.shuffle(offsets);
  rng.shuffle(left);
  rng.shuffle(right);
  std::vector<std::pair<int, int>> edges;
  for (int t = 0; t < degree; ++t) {
    for (int x = 0; x < m; ++x) edges.emplace_back(left[x], right[(x + offsets[t]) % m]);
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

Instance generate_instance(const InstanceConfig& config) {
  check_config(config);
  const int K = config.K;
  const int m = config.m;
  const int n = config.vertex_count();
  std::vector<Vertex> a0(config.a0), b0(config.b0);
  std::iota(a0.begin(), a0.end(), 0);
  std::iota(b0.begin(), b0.end(), config.a0);
  std::vector<std::vector<Vertex>> clusters(2 * K);
  Vertex next = config.a0 + config.b0;
  for (auto& c : clusters) {
    for (int t = 0; t < m; ++t) c.push_back(next++);
  }
  Instance out{config, Multigraph(n), ClusterPartition(config.mode, n, clusters, a0, b0), {}};
  Rng rng(config.seed);
  const int degree = m - static_cast<int>(std::ceil(config.mu * m - kTol));
  auto add_pair = [&](int x, int y) {
    for (const auto& [l, r] : random_regular_pair(m, degree, rng)) {
      out.graph.add_edge(clusters[x][l], clusters[y][r]);
    }
  };
  const auto& p = out.partition;
  if (config.mode == PartitionMode::TwoCliques) {
    for (int side = 0; side < 2; ++side) {
      for (int x = 0; x < K; ++x) {
        for (int y = x + 1; y < K; ++y) add_pair(side * K + x, side * K + y);
      }
    }
  } else {
    for (int x = 0; x < K; ++x) {
      for (int y = 0; y < K; ++y) add_pair(x, K + y);
    }
  }

  NeighbourPools pools(p, rng);
  if (config.mode == PartitionMode::TwoCliques) {
    std::vector<int> order(config.systems);
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);
    std::vector<char> hamilton(config.systems, 0);
    for (int t = 0; t < config.hes; ++t) hamilton[order[t]] = 1;
    for (int t = 0; t < config.systems; ++t) {
      const int group = t % (K * K);
      const int i = group / K;
      const int i2 = group % K;
      ExceptionalSystem system;
      system.kind = hamilton[t] ? SystemKind::HES : SystemKind::MES;
      system.locality = {i, i2};
      system.eps0 = config.eps0;
      std::set<Vertex> used(a0.begin(), a0.end());
      used.insert(b0.begin(), b0.end());
      for (Vertex v : a0) {
        const bool cross = hamilton[t] && v == a0.front();
        const Vertex x = pools.draw(v, p.a_cluster(i), used);
        const Vertex y = pools.draw(v, cross ? p.b_cluster(i2) : p.a_cluster(i), used);
        system.paths.push_back({x, v, y});
      }
      for (Vertex v : b0) {
        const bool cross = hamilton[t] && v == b0.front();
        const Vertex x = pools.draw(v, cross ? p.a_cluster(i) : p.b_cluster(i2), used);
        const Vertex y = pools.draw(v, p.b_cluster(i2), used);
        system.paths.push_back({x, v, y});
      }
      out.systems.push_back(std::move(system));
    }
  } else {
    const long long tuples = static_cast<long long>(K) * K * K * K;
    std::vector<long long> codes(tuples);
    std::iota(codes.begin(), codes.end(), 0);
    rng.shuffle(codes);
    for (int t = 0; t < config.systems; ++t) {
      long long code = codes[t % tuples];
      std::vector<int> tuple(4);
      for (int d = 3; d >= 0; --d, code /= K) tuple[d] = static_cast<int>(code % K);
      ExceptionalSystem system;
      system.kind = SystemKind::BES;
      system.locality = tuple;
      system.eps0 = config.eps0;
      std::set<Vertex> used(a0.begin(), a0.end());
      used.insert(b0.begin(), b0.end());
      const int a1 = p.a_cluster(tuple[0]), a2 = p.a_cluster(tuple[1]);
      const int b3 = p.b_cluster(tuple[2]), b4 = p.b_cluster(tuple[3]);
      for (Vertex v : a0) {
        const Vertex x = pools.draw(v, a1, used);
        const Vertex y = pools.draw(v, t % 2 == 0 ? b3 : a2, used);
        system.paths.push_back({x, v, y});
      }
      for (Vertex v : b0) {
        const Vertex x = pools.draw(v, t % 2 == 0 ? a2 : b3, used);
        const Vertex y = pools.draw(v, b4, used);
        system.paths.push_back({x, v, y});
      }
      out.systems.push_back(std::move(system));
    }
  }
  for (const auto& system : out.systems) out.graph += system.graph(n);
  return out;
}

std::vector<std::string> check_hypotheses(const Multigraph& g, const ClusterPartition& p,
                                          std::span<const ExceptionalSystem> systems,
                                          const InstanceConfig& config) {
  std::vector<std::string> out;
  const int K = p.side_cluster_count();
  const int m = p.cluster_size();
  const int n = p.vertex_count();
  const bool cliques = p.mode() == PartitionMode::TwoCliques;
  if (!cliques && p.mode() != PartitionMode::Bipartite) {
    out.push_back("partition must be two-cliques or bipartite");
    return out;
  }
  // Degree window into every cluster of the relevant side.
  const double lo = (1 - 4 * config.mu - 4.0 / K) * m - kTol;
  const double hi = (1 - 4 * config.mu + 4.0 / K) * m + kTol;
  for (Vertex v : p.clustered_vertices()) {
    const bool in_a = p.side_of(v) == Side::A;
    for (int i = 0; i < K; ++i) {
      const int target = cliques == in_a ? p.a_cluster(i) : p.b_cluster(i);
      const int d = g.degree_into(v, p.cluster(target));
      if (d < lo || d > hi) {
        out.push_back("vertex " + std::to_string(v) + " has " + std::to_string(d) +
                      " neighbours in cluster " + std::to_string(target));
        break;
      }
    }
    if (out.size() > 20) break;
  }
  const double bound = (0.25 - config.mu - config.rho) * n;
  if (static_cast<double>(systems.size()) > bound + kTol) {
    out.push_back("too many systems: " + std::to_string(systems.size()) + " > " + std::to_string(bound));
  }
  Multigraph together(n);
  for (std::size_t s = 0; s < systems.size(); ++s) {
    if (auto why = check_exceptional_system(systems[s], p); !why.empty()) {
      out.push_back("system " + std::to_string(s) + ": " + why);
    }
    if (systems[s].locality.empty()) out.push_back("system " + std::to_string(s) + " is not localized");
    together += systems[s].graph(n);
  }
  for (const auto& e : together.entries()) {
    if (e.multiplicity > 1 || !g.has_edge(e.u, e.v) || g.multiplicity(e.u, e.v) < e.multiplicity) {
      out.push_back("systems are not edge-disjoint in G at edge " + std::to_string(e.u) + "-" +
                    std::to_string(e.v));
      break;
    }
  }
  // Locality groups split as evenly as possible.
  std::map<std::vector<int>, int> groups;
  for (const auto& system : systems) ++groups[system.locality];
  const long long group_count = cliques ? 1LL * K * K : 1LL * K * K * K * K;
  const long long floor_share = static_cast<long long>(systems.size()) / group_count;
  for (const auto& [tag, count] : groups) {
    if (count < floor_share || count > floor_share + 1) {
      out.push_back("locality groups are unevenly filled");
      break;
    }
  }
  if (static_cast<long long>(groups.size()) < std::min<long long>(group_count, systems.size())) {
    out.push_back("locality groups are unevenly filled");
  }
  if (cliques) {
    const bool has_mes = std::any_of(systems.begin(), systems.end(),
                                     [](const auto& s) { return s.kind == SystemKind::MES; });
    const auto a_prime = p.a_prime().size();
    const auto b_prime = p.b_prime().size();
    if (has_mes && (a_prime != b_prime || a_prime % 2 != 0)) {
      out.push_back("matching systems present but |A'| = " + std::to_string(a_prime) +
                    ", |B'| = " + std::to_string(b_prime));
    }
  } else {
    std::vector<int> incidence(n, 0);
    for (const auto& system : systems) {
      for (const auto& path : system.paths) {
        if (path.size() < 2) continue;
        for (Vertex v : path) ++incidence[v];
      }
    }
    for (Vertex v : p.clustered_vertices()) {
      if (incidence[v] > 2 * config.eps0 * n + kTol) {
        out.push_back("vertex " + std::to_string(v) + " meets " + std::to_string(incidence[v]) + " systems");
      }
    }
  }
  return out;
}

}  // namespace hamdec

#include <algorithm>
#include <cmath>
#include <exception>
#include <map>
#include <set>
#include <thread>

#include "hamdec/assembly.hpp"
#include "hamdec/classic.hpp"
#include "hamdec/cyclic.hpp"
#include "hamdec/extension.hpp"
#include "hamdec/pipeline.hpp"

namespace hamdec {

namespace {

// Runs body(j) for j < count on up to `jobs` threads. The first failure in
// slice order is rethrown so errors do not depend on scheduling.
template <class Body>
void for_each_slice(int count, int jobs, Body body) {
  std::vector<std::exception_ptr> errors(count);
  auto guarded = [&](int j) {
    try {
      body(j);
    } catch (...) {
      errors[j] = std::current_exception();
    }
  };
  if (jobs <= 1 || count <= 1) {
    for (int j = 0; j < count; ++j) guarded(j);
  } else {
    for (int start = 0; start < count; start += jobs) {
      std::vector<std::jthread> workers;
      for (int j = start; j < std::min(count, start + jobs); ++j) workers.emplace_back(guarded, j);
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

template <class Fn>
auto staged(std::string_view stage, int slot, std::uint64_t seed, Fn fn) {
  try {
    return fn();
  } catch (Error& e) {
    e.add_stage(stage, slot, seed);
    throw;
  }
}

void validate_input(const Multigraph& g, const ClusterPartition& p,
                    std::span<const ExceptionalSystem> systems, const PipelineParams& params) {
  InstanceConfig config;
  config.mode = p.mode();
  config.mu = params.mu;
  config.rho = params.rho;
  config.eps0 = params.eps0;
  const auto problems = check_hypotheses(g, p, systems, config);
  if (!problems.empty()) {
    std::string joined;
    for (const auto& why : problems) joined += (joined.empty() ? "" : "; ") + why;
    Error e(ErrorKind::InvalidParameter, joined);
    e.add_stage("validate hypotheses");
    throw e;
  }
}

Certificate base_certificate(const ClusterPartition& p, const PipelineParams& params) {
  Certificate c;
  c.mode = p.mode();
  c.seed = params.seed;
  c.params = {{"K", p.side_cluster_count()}, {"m", p.cluster_size()}, {"n", p.vertex_count()},
              {"mu", params.mu},  {"rho", params.rho}, {"eps0", params.eps0},
              {"gamma", params.gamma}};
  return c;
}

CertificateSlot slot_of(int system, SystemKind kind, int slice, const Multigraph& h) {
  CertificateSlot slot{system, kind, slice, h.edge_list()};
  std::sort(slot.edges.begin(), slot.edges.end());
  return slot;
}

void record_checks(Certificate& c, const SliceChecks& checks) {
  c.derived["check_sizes"] = checks.sizes_ok;
  c.derived["check_matching_sizes"] = checks.matching_sizes_ok;
  c.derived["check_reserve_regular"] = checks.reserve_regular;
  c.derived["check_cyclic"] = checks.cyclic_ok;
  c.derived["check_disjoint"] = checks.disjoint_ok;
}

void require_extension(const BalancedExtension& be, const ClusterPartition& q, const ClusterCycle& cycle) {
  const auto failures = check_balanced_extension(be, q, cycle);
  if (!failures.empty()) fail(ErrorKind::AssemblyVerificationFailed, "balanced extension: " + failures.front());
}

struct BipartiteDemand {
  int phase_one = 0;
  int chunk = 0;
  int balancing = 0;
};

// Reserve needed by the bipartite extension of every slice: enough first
// phase matchings for each B end, chunks big enough to dodge the blocked
// vertices, and enough chunks for every (system, direction) request.
BipartiteDemand bipartite_demand(const ClusterPartition& p, std::span<const ExceptionalSystem> systems,
                                 std::span<const FictiveReduction> reductions, int slices) {
  const int K = p.side_cluster_count();
  const int m = p.cluster_size();
  const auto slice_of = assign_slices(systems, slices);
  const auto cycles = bipartite_hamilton_decompose(K);
  BipartiteDemand d;
  int largest = 0;
  for (const auto& r : reductions) largest = std::max<int>(largest, static_cast<int>(r.dir.size()));
  d.chunk = std::max(1, std::min(m, 5 * 2 * largest));
  const int chunks_per_matching = std::max(1, m / d.chunk);
  int worst_block = 0;
  for (int j = 0; j < slices; ++j) {
    std::map<Vertex, int> b_end_use;
    std::map<std::pair<int, int>, std::set<std::pair<int, bool>>> requests;
    const auto& cycle = cycles[j];
    for (std::size_t s = 0; s < systems.size(); ++s) {
      if (slice_of[s] != j) continue;
      const auto& dir = reductions[s].dir;
      const int home = p.a_cluster(systems[s].locality[0]);
      int in_home = 0;
      for (const Arc& a : dir) {
        in_home += p.cluster_of(a.tail) == home;
        ++b_end_use[a.head];
        const int from = cycle.prev(p.cluster_of(a.head));
        const int to = cycle.next(p.cluster_of(a.tail));
        requests[std::minmax(from, to)].insert({static_cast<int>(s), true});
        const int back_from = cycle.prev(home);
        const int back_to = cycle.next(p.cluster_of(a.head));
        requests[std::minmax(back_from, back_to)].insert({static_cast<int>(s), false});
      }
      worst_block = std::max(worst_block, in_home + static_cast<int>(dir.size()));
    }
    int reuse = 1;
    for (const auto& [v, count] : b_end_use) reuse = std::max(reuse, count);
    d.phase_one = std::max(d.phase_one, worst_block + reuse - 1);
    for (const auto& [pair, keys] : requests) {
      const int need = static_cast<int>(keys.size());
      d.balancing = std::max(d.balancing, (need + chunks_per_matching - 1) / chunks_per_matching);
    }
  }
  return d;
}

}  // namespace

PipelineParams params_for(const InstanceConfig& config) {
  PipelineParams params;
  params.mu = config.mu;
  params.rho = config.rho;
  params.eps0 = config.eps0;
  params.gamma = config.gamma;
  params.seed = config.seed;
  return params;
}

Multigraph trim_graph(const Multigraph& g, const ClusterPartition& p,
                      std::span<const ExceptionalSystem> systems) {
  const int n = g.vertex_count();
  Multigraph kept(n);
  if (p.mode() == PartitionMode::Bipartite) {
    kept += g.between(p.a_vertices(), p.b_vertices());
  } else {
    kept += g.induced(p.a_vertices());
    kept += g.induced(p.b_vertices());
  }
  for (const auto& system : systems) {
    for (const auto& e : system.graph(n).entries()) {
      const int room = g.multiplicity(e.u, e.v) - kept.multiplicity(e.u, e.v);
      if (room > 0) kept.add_edge(e.u, e.v, std::min(room, e.multiplicity));
    }
  }
  return kept;
}

Certificate approx_decompose_two_cliques(const Multigraph& g_in, const ClusterPartition& p,
                                         std::span<const ExceptionalSystem> systems,
                                         const PipelineParams& params) {
  if (p.mode() != PartitionMode::TwoCliques) fail(ErrorKind::InvalidParameter, "two-cliques pipeline needs a two-cliques partition");
  const Multigraph g = params.trim ? trim_graph(g_in, p, systems) : g_in;
  validate_input(g, p, systems, params);
  Certificate cert = base_certificate(p, params);
  if (systems.empty()) return cert;
  const int K = p.side_cluster_count();
  const int m = p.cluster_size();
  const int slices = (K - 1) / 2;

  int largest = 0;
  for (const auto& system : systems) {
    const auto r = staged("fictive reduction", -1, params.seed, [&] { return build_fictive_two_cliques(system, p); });
    largest = std::max<int>({largest, static_cast<int>(r.a_dir.size()), static_cast<int>(r.b_dir.size())});
  }
  DecompositionParams dp{params.mu, params.rho, params.eps0, params.reserve_degree.value_or(2 * largest)};
  const auto decomposition =
      staged("system decomposition", -1, params.seed, [&] { return sysdecom(g, p, systems, dp); });
  cert.derived["pair_degree"] = decomposition.pair_degree;
  cert.derived["reserve_degree"] = decomposition.reserve_degree;
  cert.derived["asymptotic_reserve_degree"] = asymptotic_reserve_two_cliques(K, m, params.eps0);
  record_checks(cert, decomposition.checks);

  // cycles[side][s] for every system s.
  std::vector<std::vector<Digraph>> cycles(2, std::vector<Digraph>(systems.size()));
  std::vector<int> slice_of(systems.size(), 0);
  for_each_slice(slices, params.jobs, [&](int j) {
    for (int side = 0; side < 2; ++side) {
      const SliceSystem& slice = side == 0 ? decomposition.a_side[j] : decomposition.b_side[j];
      const std::uint64_t seed = Rng::derive(params.seed, 2 * j + side);
      std::vector<CliqueExtensionRequest> requests;
      for (std::size_t t = 0; t < slice.members.size(); ++t) {
        requests.push_back({slice.matchings[t], slice.member_cluster[t]});
      }
      const auto& q = slice.system.clusters;
      const auto ext = staged("balanced extension", j, seed, [&] {
        auto out = balance_extend_cliques(requests, q, slice.system.cycle, slice.reserve);
        require_extension(out.extension, q, slice.system.cycle);
        return out;
      });
      const auto assembly = staged("assembly", j, seed, [&] {
        return merge_slice(slice.system, ext.extension, params.gamma, seed, params.budget);
      });
      for (std::size_t t = 0; t < slice.members.size(); ++t) {
        cycles[side][slice.members[t]] = assembly.cycles[t];
        slice_of[slice.members[t]] = j;
      }
    }
  });
  for (std::size_t s = 0; s < systems.size(); ++s) {
    const auto reduction = decomposition.reductions[s];
    const Multigraph h = staged("splice", static_cast<int>(s), params.seed, [&] {
      return splice_two_cliques(cycles[0][s], cycles[1][s], systems[s], reduction, p);
    });
    cert.slots.push_back(slot_of(static_cast<int>(s), systems[s].kind, slice_of[s], h));
  }
  return cert;
}

Certificate approx_decompose_bipartite(const Multigraph& g_in, const ClusterPartition& p,
                                       std::span<const ExceptionalSystem> systems,
                                       const PipelineParams& params) {
  if (p.mode() != PartitionMode::Bipartite) fail(ErrorKind::InvalidParameter, "bipartite pipeline needs a bipartite partition");
  const Multigraph g = params.trim ? trim_graph(g_in, p, systems) : g_in;
  validate_input(g, p, systems, params);
  Certificate cert = base_certificate(p, params);
  if (systems.empty()) return cert;
  const int K = p.side_cluster_count();
  const int m = p.cluster_size();
  const int slices = K / 2;

  std::vector<FictiveReduction> reductions;
  for (const auto& system : systems) {
    reductions.push_back(staged("fictive reduction", -1, params.seed, [&] { return build_fictive_bipartite(system, p); }));
  }
  const auto demand = bipartite_demand(p, systems, reductions, slices);
  DecompositionParams dp{params.mu, params.rho, params.eps0,
                         params.reserve_degree.value_or(demand.phase_one + demand.balancing)};
  const auto decomposition =
      staged("system decomposition", -1, params.seed, [&] { return sysdecombip(g, p, systems, dp); });
  cert.derived["pair_degree"] = decomposition.pair_degree;
  cert.derived["reserve_degree"] = decomposition.reserve_degree;
  cert.derived["phase_one_degree"] = demand.phase_one;
  cert.derived["chunk"] = demand.chunk;
  cert.derived["asymptotic_reserve_degree"] = asymptotic_reserve_bipartite(K, m, params.eps0);
  record_checks(cert, decomposition.checks);

  const BipartiteExtensionConfig config{demand.phase_one, demand.chunk, params.eps0};
  std::vector<Digraph> cycles(systems.size());
  std::vector<int> slice_of(systems.size(), 0);
  for_each_slice(slices, params.jobs, [&](int j) {
    const SliceSystem& slice = decomposition.slices[j];
    const std::uint64_t seed = Rng::derive(params.seed, j);
    std::vector<BipartiteExtensionRequest> requests;
    for (std::size_t t = 0; t < slice.members.size(); ++t) {
      const auto& tag = systems[slice.members[t]].locality;
      requests.push_back({slice.matchings[t],
                          {p.a_cluster(tag[0]), p.a_cluster(tag[1]), p.b_cluster(tag[2]), p.b_cluster(tag[3])}});
    }
    const auto& q = slice.system.clusters;
    const auto ext = staged("balanced extension", j, seed, [&] {
      auto out = balance_extend_bipartite(requests, q, slice.system.cycle, slice.reserve, config);
      require_extension(out.extension, q, slice.system.cycle);
      return out;
    });
    const auto assembly = staged("assembly", j, seed, [&] {
      return merge_slice(slice.system, ext.extension, params.gamma, seed, params.budget);
    });
    for (std::size_t t = 0; t < slice.members.size(); ++t) {
      cycles[slice.members[t]] = assembly.cycles[t];
      slice_of[slice.members[t]] = j;
    }
  });
  for (std::size_t s = 0; s < systems.size(); ++s) {
    const Multigraph h = staged("splice", static_cast<int>(s), params.seed, [&] {
      return splice_bipartite(cycles[s], systems[s], reductions[s], p);
    });
    cert.slots.push_back(slot_of(static_cast<int>(s), systems[s].kind, slice_of[s], h));
  }
  return cert;
}

Certificate decompose(const Multigraph& g, const ClusterPartition& p,
                      std::span<const ExceptionalSystem> systems, const PipelineParams& params) {
  Certificate cert = p.mode() == PartitionMode::Bipartite
                         ? approx_decompose_bipartite(g, p, systems, params)
                         : approx_decompose_two_cliques(g, p, systems, params);
  const Multigraph checked = params.trim ? trim_graph(g, p, systems) : g;
  cert.verdicts = verify_certificate(checked, p, systems, cert);
  return cert;
}

}  // namespace hamdec

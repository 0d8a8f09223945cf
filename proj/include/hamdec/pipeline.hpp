#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "hamdec/generator.hpp"
#include "hamdec/hamilton_search.hpp"
#include "hamdec/verify.hpp"

namespace hamdec {

struct PipelineParams {
  double mu = 0.05;
  double rho = 0.1;
  double eps0 = 0.01;
  double gamma = 0.15;
  std::uint64_t seed = 1;
  int jobs = 1;
  // Drop edges of G - G[A] - G[B] (resp. G - G[A, B]) that no system uses.
  bool trim = false;
  // Overrides the demand-derived reserve degree of the pair graphs.
  std::optional<int> reserve_degree;
  SearchBudget budget;
};

PipelineParams params_for(const InstanceConfig& config);

// |J| edge-disjoint spanning subgraphs H_s containing J_s: a Hamilton cycle
// for each Hamilton system, two perfect matchings for each matching system.
Certificate approx_decompose_two_cliques(const Multigraph& g, const ClusterPartition& p,
                                         std::span<const ExceptionalSystem> systems,
                                         const PipelineParams& params);

// |J| edge-disjoint Hamilton cycles, each containing its balanced system.
Certificate approx_decompose_bipartite(const Multigraph& g, const ClusterPartition& p,
                                       std::span<const ExceptionalSystem> systems,
                                       const PipelineParams& params);

// Dispatches on the partition mode and attaches the verifier's verdicts.
Certificate decompose(const Multigraph& g, const ClusterPartition& p,
                      std::span<const ExceptionalSystem> systems, const PipelineParams& params);

// G with unused edges outside the cluster sides removed.
Multigraph trim_graph(const Multigraph& g, const ClusterPartition& p,
                      std::span<const ExceptionalSystem> systems);

}  // namespace hamdec

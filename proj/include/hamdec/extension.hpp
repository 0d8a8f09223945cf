#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "hamdec/graph.hpp"

namespace hamdec {

struct BalancedExtension {
  std::vector<Digraph> sequences;                // PS_s
  std::vector<OrderedDirectedMatching> sources;  // M_s
  std::vector<int> extension_cluster;            // i_s
  double eps = 0.0;
  double ell = 0.0;
};

struct ExtensionResult {
  Digraph oriented_reserve;
  BalancedExtension extension;
};

// A matching inside one cluster, to be balanced through the reserve pair
// between the neighbouring clusters on the cycle.
struct CliqueExtensionRequest {
  OrderedDirectedMatching matching;
  int cluster = 0;
};

// Requires every reserve[pred(i), succ(i)] to be r-regular for one r; then
// eps = r / 2m and the extension carries parameters (2 eps, 3).
ExtensionResult balance_extend_cliques(std::span<const CliqueExtensionRequest> requests,
                                       const ClusterPartition& q, const ClusterCycle& cycle,
                                       const Multigraph& reserve);

// A fictive matching from A-clusters to B-clusters of a balanced system,
// with the Q indices of its four tagged clusters (A, A, B, B).
struct BipartiteExtensionRequest {
  OrderedDirectedMatching matching;
  std::array<int, 4> clusters{};
};

struct BipartiteExtensionConfig {
  // Matchings of each reserve pair kept for the first phase; the rest are
  // cut into chunks of `chunk` edges for the balancing arcs.
  int phase_one_degree = 0;
  int chunk = 0;
  // The extension is reported with parameters (12 eps K, 12).
  double eps = 0.0;
};

ExtensionResult balance_extend_bipartite(std::span<const BipartiteExtensionRequest> requests,
                                         const ClusterPartition& q, const ClusterCycle& cycle,
                                         const Multigraph& reserve,
                                         const BipartiteExtensionConfig& config);

// Independent check of the three balanced-extension conditions using the
// extension's own (eps, ell). Returns every failure found.
std::vector<std::string> check_balanced_extension(const BalancedExtension& extension,
                                                  const ClusterPartition& q,
                                                  const ClusterCycle& cycle);

}  // namespace hamdec

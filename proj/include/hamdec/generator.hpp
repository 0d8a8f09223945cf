#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hamdec/exceptional.hpp"
#include "hamdec/graph.hpp"
#include "hamdec/rng.hpp"

namespace hamdec {

struct InstanceConfig {
  PartitionMode mode = PartitionMode::TwoCliques;
  int K = 5;
  int m = 40;
  int a0 = 2;
  int b0 = 2;
  double eps0 = 0.01;
  double mu = 0.05;
  double rho = 0.1;
  double gamma = 0.15;
  int systems = 25;
  int hes = 10;  // two-cliques only; the rest are matching systems
  std::uint64_t seed = 1;

  int vertex_count() const { return a0 + b0 + 2 * K * m; }
  bool operator==(const InstanceConfig&) const = default;
};

// Desk-scale defaults for each mode.
InstanceConfig default_config(PartitionMode mode);

struct Instance {
  InstanceConfig config;
  Multigraph graph;
  ClusterPartition partition;
  std::vector<ExceptionalSystem> systems;
};

// `degree` distinct cyclic offsets between two shuffled copies of 0..m-1:
// a simple degree-regular bipartite graph, as (left, right) index pairs.
std::vector<std::pair<int, int>> random_regular_pair(int m, int degree, Rng& rng);

// Cluster pairs of degree m - ceil(mu m) plus edge-disjoint localized
// exceptional systems that use fresh neighbours of each exceptional vertex.
Instance generate_instance(const InstanceConfig& config);

// Every violated hypothesis of the two-cliques or bipartite setting.
std::vector<std::string> check_hypotheses(const Multigraph& g, const ClusterPartition& p,
                                          std::span<const ExceptionalSystem> systems,
                                          const InstanceConfig& config);

}  // namespace hamdec

#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hamdec/exceptional.hpp"
#include "hamdec/graph.hpp"

namespace hamdec {

// Digraph winding around a cluster cycle with near-uniform degrees into
// the next cluster.
struct CyclicSystem {
  Digraph graph;
  ClusterPartition clusters;  // plain equipartition
  ClusterCycle cycle;
  double mu = 0.0;
  double eps = 0.0;
};

// Empty when the system is valid, otherwise the first failure.
std::string check_cyclic_system(const CyclicSystem& system);

struct DecompositionParams {
  double mu = 0.05;
  double rho = 0.1;
  double eps0 = 0.01;
  // Degree of each reserved pair graph. Unset means the asymptotic value,
  // which only fits inside the pair graphs for large m.
  std::optional<int> reserve_degree;
};

// One slice: a cyclic system plus its reserved graph and assigned systems.
struct SliceSystem {
  CyclicSystem system;
  Multigraph reserve;                               // H_j, undirected
  std::vector<int> members;                         // indices into the input systems
  std::vector<OrderedDirectedMatching> matchings;   // fictive matching of each member
  std::vector<int> member_cluster;                  // cluster of Q holding it
};

struct SliceChecks {
  bool sizes_ok = true;         // per-cluster member counts within bound
  bool matching_sizes_ok = true;
  bool reserve_regular = true;
  bool cyclic_ok = true;
  bool disjoint_ok = true;
  std::vector<std::string> notes;
};

struct TwoCliquesDecomposition {
  std::vector<SliceSystem> a_side;
  std::vector<SliceSystem> b_side;
  std::vector<FictiveReduction> reductions;  // per input system
  int pair_degree = 0;     // regular pair subgraph split into reserves
  int reserve_degree = 0;
  SliceChecks checks;
};

struct BipartiteDecomposition {
  std::vector<SliceSystem> slices;
  std::vector<FictiveReduction> reductions;
  int pair_degree = 0;
  int reserve_degree = 0;
  SliceChecks checks;
};

// Round-robin slice per system over locality groups in lexicographic order,
// so each group is split as evenly as possible.
std::vector<int> assign_slices(std::span<const ExceptionalSystem> systems, int slices);

int asymptotic_reserve_two_cliques(int K, int m, double eps0);
int asymptotic_reserve_bipartite(int K, int m, double eps0);

// Splits G[A] and G[B] into (K-1)/2 oriented cyclic systems each plus
// reserved regular graphs, and distributes the fictive matchings.
TwoCliquesDecomposition sysdecom(const Multigraph& g, const ClusterPartition& p,
                                 std::span<const ExceptionalSystem> systems,
                                 const DecompositionParams& params);

// Bipartite analogue on G[A, B] with K/2 slices over 2K clusters.
BipartiteDecomposition sysdecombip(const Multigraph& g, const ClusterPartition& p,
                                   std::span<const ExceptionalSystem> systems,
                                   const DecompositionParams& params);

}  // namespace hamdec

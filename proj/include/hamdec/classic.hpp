#pragma once

#include <span>
#include <vector>

#include "hamdec/graph.hpp"

namespace hamdec {

// (K-1)/2 directed Hamilton cycles on cluster indices 0..K-1 whose
// undirected versions partition the edges of the complete graph. K odd.
std::vector<ClusterCycle> walecki_decompose(int K);

// K/2 Hamilton cycles on 2K clusters (A_i = i, B_i = K + i) partitioning
// the edges of K_{K,K}. K even.
std::vector<ClusterCycle> bipartite_hamilton_decompose(int K);

// floor((1 - mu - rho) m), guarded against representation error.
int regular_degree_target(int m, double mu, double rho);

// Spanning subgraph of g[left, right] in which every vertex has degree
// exactly `degree`, from an integral max flow. Throws CutViolation with a
// violating (S1, S2) when the flow falls short.
Multigraph regular_subgraph_exact(const Multigraph& g, std::span<const Vertex> left,
                                  std::span<const Vertex> right, int degree);

Multigraph regular_spanning_subgraph(const Multigraph& g, std::span<const Vertex> left,
                                     std::span<const Vertex> right, double mu, double rho);

// True iff e(S1, right \ S2) < target * (|S1| - |S2|) holds in g.
bool witness_violates_cut_bound(const Multigraph& g, std::span<const Vertex> right,
                                const CutWitness& witness);

// Exact decomposition of an r-regular bipartite multigraph into r perfect
// matchings (each returned as a Multigraph on the same vertex range).
std::vector<Multigraph> regular_bipartite_to_matchings(const Multigraph& g,
                                                       std::span<const Vertex> left,
                                                       std::span<const Vertex> right);

// `parts` edge-disjoint spanning `degree`-regular subgraphs of g.
std::vector<Multigraph> split_regular(const Multigraph& g, std::span<const Vertex> left,
                                      std::span<const Vertex> right, int parts, int degree);

}  // namespace hamdec

#pragma once

#include <string>
#include <vector>

#include "hamdec/graph.hpp"

namespace hamdec {

enum class SystemKind { HES, MES, BES };

std::string_view to_string(SystemKind kind);
SystemKind system_kind_from_string(std::string_view text);

// A path system covering the exceptional vertices. Each path is a vertex
// sequence; a single vertex is a trivial path.
struct ExceptionalSystem {
  SystemKind kind = SystemKind::MES;
  std::vector<std::vector<Vertex>> paths;
  // (i, i') for HES/MES, (i1, i2, i3, i4) for BES; 0-based side indices.
  // Empty means not localized.
  std::vector<int> locality;
  double eps0 = 0.0;

  Multigraph graph(int vertex_count) const;
  std::vector<Vertex> vertices() const;
  long long edge_count() const;
  bool operator==(const ExceptionalSystem&) const = default;
};

// Empty string when valid, otherwise the first violated condition.
std::string check_exceptional_system(const ExceptionalSystem& system, const ClusterPartition& p);
// Throws InvalidExceptionalSystem.
void validate_exceptional_system(const ExceptionalSystem& system, const ClusterPartition& p);

// Number of paths with one end in A and the other in B.
int ab_path_count(const ExceptionalSystem& system, const ClusterPartition& p);

// Fictive edges replacing an exceptional system. Two-cliques systems fill
// a_dir/b_dir, balanced systems fill dir.
struct FictiveReduction {
  std::vector<Edge> jab;
  OrderedDirectedMatching a_dir;
  OrderedDirectedMatching b_dir;
  OrderedDirectedMatching dir;

  Multigraph fictive(int vertex_count) const;
  long long size() const {
    return static_cast<long long>(a_dir.size() + b_dir.size() + dir.size());
  }
};

// One edge joining the ends of each nontrivial path.
std::vector<Edge> induce_jab(const ExceptionalSystem& system, const ClusterPartition& p);

FictiveReduction build_fictive_two_cliques(const ExceptionalSystem& system,
                                           const ClusterPartition& p);
FictiveReduction build_fictive_bipartite(const ExceptionalSystem& system,
                                         const ClusterPartition& p);

// C_A + C_B - J* + J, verified.
Multigraph splice_two_cliques(const Digraph& cycle_a, const Digraph& cycle_b,
                              const ExceptionalSystem& system, const FictiveReduction& reduction,
                              const ClusterPartition& p);
// D - J* + J, verified.
Multigraph splice_bipartite(const Digraph& cycle, const ExceptionalSystem& system,
                            const FictiveReduction& reduction, const ClusterPartition& p);

}  // namespace hamdec

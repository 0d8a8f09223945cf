#pragma once

#include <compare>
#include <map>
#include <set>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "hamdec/error.hpp"

namespace hamdec {

// Undirected pair, stored with u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  Edge() = default;
  Edge(Vertex a, Vertex b) : u(a < b ? a : b), v(a < b ? b : a) {}
  auto operator<=>(const Edge&) const = default;
};

struct Arc {
  Vertex tail = 0;
  Vertex head = 0;
  auto operator<=>(const Arc&) const = default;
};

// Arcs f_1..f_l, pairwise vertex-disjoint; the order is significant.
using OrderedDirectedMatching = std::vector<Arc>;

bool is_vertex_disjoint(std::span<const Arc> arcs);

class Multigraph {
 public:
  struct Entry {
    Vertex u;
    Vertex v;
    int multiplicity;
  };

  explicit Multigraph(int vertex_count = 0);

  int vertex_count() const { return static_cast<int>(adj_.size()); }
  long long edge_count() const { return edge_total_; }

  void add_edge(Vertex u, Vertex v, int multiplicity = 1);
  // Removes up to `multiplicity` copies; returns how many were removed.
  int remove_edge(Vertex u, Vertex v, int multiplicity = 1);
  int multiplicity(Vertex u, Vertex v) const;
  bool has_edge(Vertex u, Vertex v) const { return multiplicity(u, v) > 0; }

  // Degree counted with multiplicity.
  int degree(Vertex v) const;
  int degree_into(Vertex v, std::span<const Vertex> targets) const;
  const std::map<Vertex, int>& neighbours(Vertex v) const { return adj_.at(v); }

  std::vector<Entry> entries() const;  // sorted by (u, v), u < v
  std::vector<Edge> edge_list() const;  // each copy listed once per multiplicity

  Multigraph& operator+=(const Multigraph& other);
  // Multiplicity arithmetic, never below zero.
  Multigraph& operator-=(const Multigraph& other);
  friend Multigraph operator+(Multigraph lhs, const Multigraph& rhs) { return lhs += rhs; }
  friend Multigraph operator-(Multigraph lhs, const Multigraph& rhs) { return lhs -= rhs; }
  bool operator==(const Multigraph& other) const = default;

  // Submultigraph keeping edges with both ends in `vertices`.
  Multigraph induced(std::span<const Vertex> vertices) const;
  // Submultigraph keeping edges with one end in `left` and one in `right`.
  Multigraph between(std::span<const Vertex> left, std::span<const Vertex> right) const;
  // True if every edge of `sub` is present here with at least its multiplicity.
  bool contains(const Multigraph& sub) const;

 private:
  void check_vertex(Vertex v) const;

  std::vector<std::map<Vertex, int>> adj_;
  long long edge_total_ = 0;
};

class Digraph {
 public:
  explicit Digraph(int vertex_count = 0);

  int vertex_count() const { return static_cast<int>(out_.size()); }
  long long arc_count() const { return arc_total_; }

  // Returns false if the arc already exists; throws on loops.
  bool add_arc(Vertex tail, Vertex head);
  bool add_arc(Arc a) { return add_arc(a.tail, a.head); }
  bool remove_arc(Vertex tail, Vertex head);
  bool remove_arc(Arc a) { return remove_arc(a.tail, a.head); }
  bool has_arc(Vertex tail, Vertex head) const;
  bool has_arc(Arc a) const { return has_arc(a.tail, a.head); }

  const std::set<Vertex>& out(Vertex v) const { return out_.at(v); }
  const std::set<Vertex>& in(Vertex v) const { return in_.at(v); }
  int out_degree(Vertex v) const { return static_cast<int>(out_.at(v).size()); }
  int in_degree(Vertex v) const { return static_cast<int>(in_.at(v).size()); }

  std::vector<Arc> arcs() const;  // sorted
  // Vertices incident to at least one arc.
  std::vector<Vertex> support() const;
  // Undirected version; antiparallel arcs give multiplicity 2.
  Multigraph underlying() const;

  Digraph& operator+=(const Digraph& other);
  Digraph& operator-=(const Digraph& other);
  bool operator==(const Digraph& other) const = default;

 private:
  void check_vertex(Vertex v) const;

  std::vector<std::set<Vertex>> out_;
  std::vector<std::set<Vertex>> in_;
  long long arc_total_ = 0;
};

Digraph digraph_from_arcs(int vertex_count, std::span<const Arc> arcs);
// Cycle v0 -> v1 -> ... -> v_{k-1} -> v0.
Digraph digraph_from_cycle(int vertex_count, std::span<const Vertex> order);

enum class PartitionMode { TwoCliques, Bipartite, Plain };

std::string_view to_string(PartitionMode mode);

enum class Side { None, A, B };

// Clusters of equal size m plus exceptional sets. In the two-cliques and
// bipartite modes clusters 0..K-1 are A_1..A_K and K..2K-1 are B_1..B_K.
class ClusterPartition {
 public:
  ClusterPartition() = default;
  ClusterPartition(PartitionMode mode, int vertex_count,
                   std::vector<std::vector<Vertex>> clusters,
                   std::vector<Vertex> a0 = {}, std::vector<Vertex> b0 = {});

  static ClusterPartition plain(int vertex_count, std::vector<std::vector<Vertex>> clusters);

  PartitionMode mode() const { return mode_; }
  int vertex_count() const { return vertex_count_; }
  int cluster_count() const { return static_cast<int>(clusters_.size()); }
  // K for two-cliques/bipartite, k for plain.
  int side_cluster_count() const;
  int cluster_size() const { return m_; }
  const std::vector<Vertex>& cluster(int index) const { return clusters_.at(index); }
  const std::vector<std::vector<Vertex>>& clusters() const { return clusters_; }
  const std::vector<Vertex>& a0() const { return a0_; }
  const std::vector<Vertex>& b0() const { return b0_; }

  // -1 when v is exceptional or outside every cluster.
  int cluster_of(Vertex v) const;
  Side side_of(Vertex v) const;  // A for A_0 and A clusters, B likewise
  bool is_exceptional(Vertex v) const;

  int a_cluster(int i) const;  // index of A_{i+1}
  int b_cluster(int i) const;  // index of B_{i+1}

  std::vector<Vertex> a_vertices() const;        // A = union of A clusters
  std::vector<Vertex> b_vertices() const;        // B
  std::vector<Vertex> a_prime() const;           // A_0 + A
  std::vector<Vertex> b_prime() const;           // B_0 + B
  std::vector<Vertex> exceptional() const;       // V_0
  std::vector<Vertex> clustered_vertices() const;

  // Plain partition of the given clusters (in that order).
  ClusterPartition restrict_to(std::span<const int> cluster_indices) const;

 private:
  PartitionMode mode_ = PartitionMode::Plain;
  int vertex_count_ = 0;
  int m_ = 0;
  std::vector<std::vector<Vertex>> clusters_;
  std::vector<Vertex> a0_;
  std::vector<Vertex> b0_;
  std::vector<int> cluster_of_;
  std::vector<Side> side_;
};

// Directed cycle through all clusters, stored as a cyclic order.
class ClusterCycle {
 public:
  ClusterCycle() = default;
  explicit ClusterCycle(std::vector<int> order);

  int size() const { return static_cast<int>(order_.size()); }
  const std::vector<int>& order() const { return order_; }
  int at(int position) const { return order_.at(position); }
  int position_of(int cluster) const { return position_.at(cluster); }
  int next(int cluster) const;
  int prev(int cluster) const;
  // Undirected cluster pairs {X, next(X)}.
  std::vector<std::pair<int, int>> edges() const;
  bool operator==(const ClusterCycle& other) const { return order_ == other.order_; }

 private:
  std::vector<int> order_;
  std::vector<int> position_;
};

// True iff g restricted to `vertices` is one cycle through all of them.
bool verify_hamilton_cycle(const Multigraph& g, std::span<const Vertex> vertices);
bool verify_hamilton_cycle(const Digraph& g, std::span<const Vertex> vertices);

// Cycle order starting at the smallest vertex; empty if d is not one cycle.
std::vector<Vertex> cycle_order(const Digraph& d);
// Cycles of a 1-regular digraph on its support.
std::vector<std::vector<Vertex>> cycles_of_one_factor(const Digraph& f);

bool winds_around(const Digraph& d, const ClusterPartition& p, const ClusterCycle& c);
bool is_locally_balanced(const Digraph& d, const ClusterPartition& p, const ClusterCycle& c);
bool is_consistent_with(const Digraph& cycle, std::span<const Arc> matching);

// Max degree 2 and acyclic components.
bool is_path_system(const Multigraph& g);
// Max in/out-degree 1 and no directed cycle.
bool is_path_sequence(const Digraph& d);

// Sum of degrees in a multiset-of-edges sense, for convenience in checks.
std::vector<int> degree_sequence(const Multigraph& g);

}  // namespace hamdec

#include "hamdec/graph.hpp"

#include <algorithm>
#include <numeric>

namespace hamdec {

bool is_vertex_disjoint(std::span<const Arc> arcs) {
  std::set<Vertex> seen;
  for (const Arc& a : arcs) {
    if (a.tail == a.head) return false;
    if (!seen.insert(a.tail).second || !seen.insert(a.head).second) return false;
  }
  return true;
}

// ---------------------------------------------------------------- Multigraph

Multigraph::Multigraph(int vertex_count) : adj_(std::max(vertex_count, 0)) {}

void Multigraph::check_vertex(Vertex v) const {
  if (v < 0 || v >= vertex_count()) {
    fail(ErrorKind::MalformedInput, "vertex " + std::to_string(v) + " out of range [0," +
                                        std::to_string(vertex_count()) + ")");
  }
}

void Multigraph::add_edge(Vertex u, Vertex v, int multiplicity) {
  check_vertex(u);
  check_vertex(v);
  if (u == v) fail(ErrorKind::MalformedInput, "loop at vertex " + std::to_string(u));
  if (multiplicity <= 0) return;
  adj_[u][v] += multiplicity;
  adj_[v][u] += multiplicity;
  edge_total_ += multiplicity;
}

int Multigraph::remove_edge(Vertex u, Vertex v, int multiplicity) {
  check_vertex(u);
  check_vertex(v);
  auto it = adj_[u].find(v);
  if (it == adj_[u].end() || multiplicity <= 0) return 0;
  const int removed = std::min(multiplicity, it->second);
  it->second -= removed;
  if (it->second == 0) adj_[u].erase(it);
  auto back = adj_[v].find(u);
  back->second -= removed;
  if (back->second == 0) adj_[v].erase(back);
  edge_total_ -= removed;
  return removed;
}

int Multigraph::multiplicity(Vertex u, Vertex v) const {
  if (u < 0 || u >= vertex_count()) return 0;
  auto it = adj_[u].find(v);
  return it == adj_[u].end() ? 0 : it->second;
}

int Multigraph::degree(Vertex v) const {
  check_vertex(v);
  int d = 0;
  for (const auto& [w, mult] : adj_[v]) d += mult;
  return d;
}

int Multigraph::degree_into(Vertex v, std::span<const Vertex> targets) const {
  int d = 0;
  for (Vertex w : targets) d += multiplicity(v, w);
  return d;
}

std::vector<Multigraph::Entry> Multigraph::entries() const {
  std::vector<Entry> out;
  for (Vertex u = 0; u < vertex_count(); ++u) {
    for (const auto& [v, mult] : adj_[u]) {
      if (u < v) out.push_back({u, v, mult});
    }
  }
  return out;
}

std::vector<Edge> Multigraph::edge_list() const {
  std::vector<Edge> out;
  for (const Entry& e : entries()) {
    for (int k = 0; k < e.multiplicity; ++k) out.emplace_back(e.u, e.v);
  }
  return out;
}

Multigraph& Multigraph::operator+=(const Multigraph& other) {
  if (other.vertex_count() > vertex_count()) adj_.resize(other.vertex_count());
  for (const Entry& e : other.entries()) add_edge(e.u, e.v, e.multiplicity);
  return *this;
}

Multigraph& Multigraph::operator-=(const Multigraph& other) {
  for (const Entry& e : other.entries()) {
    if (e.u < vertex_count() && e.v < vertex_count()) remove_edge(e.u, e.v, e.multiplicity);
  }
  return *this;
}

Multigraph Multigraph::induced(std::span<const Vertex> vertices) const {
  std::vector<char> keep(vertex_count(), 0);
  for (Vertex v : vertices) {
    check_vertex(v);
    keep[v] = 1;
  }
  Multigraph out(vertex_count());
  for (Vertex u : vertices) {
    for (const auto& [v, mult] : adj_[u]) {
      if (u < v && keep[v]) out.add_edge(u, v, mult);
    }
  }
  return out;
}

Multigraph Multigraph::between(std::span<const Vertex> left,
                               std::span<const Vertex> right) const {
  std::vector<char> in_right(vertex_count(), 0);
  for (Vertex v : right) {
    check_vertex(v);
    in_right[v] = 1;
  }
  Multigraph out(vertex_count());
  for (Vertex u : left) {
    check_vertex(u);
    for (const auto& [v, mult] : adj_[u]) {
      if (in_right[v]) out.add_edge(u, v, mult);
    }
  }
  return out;
}

bool Multigraph::contains(const Multigraph& sub) const {
  for (const Entry& e : sub.entries()) {
    if (multiplicity(e.u, e.v) < e.multiplicity) return false;
  }
  return true;
}

std::vector<int> degree_sequence(const Multigraph& g) {
  std::vector<int> out(g.vertex_count());
  for (Vertex v = 0; v < g.vertex_count(); ++v) out[v] = g.degree(v);
  return out;
}

// ------------------------------------------------------------------- Digraph

Digraph::Digraph(int vertex_count)
    : out_(std::max(vertex_count, 0)), in_(std::max(vertex_count, 0)) {}

void Digraph::check_vertex(Vertex v) const {
  if (v < 0 || v >= vertex_count()) {
    fail(ErrorKind::MalformedInput, "vertex " + std::to_string(v) + " out of range [0," +
                                        std::to_string(vertex_count()) + ")");
  }
}

bool Digraph::add_arc(Vertex tail, Vertex head) {
  check_vertex(tail);
  check_vertex(head);
  if (tail == head) fail(ErrorKind::MalformedInput, "loop at vertex " + std::to_string(tail));
  if (!out_[tail].insert(head).second) return false;
  in_[head].insert(tail);
  ++arc_total_;
  return true;
}

bool Digraph::remove_arc(Vertex tail, Vertex head) {
  if (tail < 0 || tail >= vertex_count() || head < 0 || head >= vertex_count()) return false;
  if (out_[tail].erase(head) == 0) return false;
  in_[head].erase(tail);
  --arc_total_;
  return true;
}

bool Digraph::has_arc(Vertex tail, Vertex head) const {
  if (tail < 0 || tail >= vertex_count()) return false;
  return out_[tail].count(head) > 0;
}

std::vector<Arc> Digraph::arcs() const {
  std::vector<Arc> out;
  out.reserve(arc_total_);
  for (Vertex t = 0; t < vertex_count(); ++t) {
    for (Vertex h : out_[t]) out.push_back({t, h});
  }
  return out;
}

std::vector<Vertex> Digraph::support() const {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < vertex_count(); ++v) {
    if (!out_[v].empty() || !in_[v].empty()) out.push_back(v);
  }
  return out;
}

Multigraph Digraph::underlying() const {
  Multigraph g(vertex_count());
  for (const Arc& a : arcs()) g.add_edge(a.tail, a.head);
  return g;
}

Digraph& Digraph::operator+=(const Digraph& other) {
  if (other.vertex_count() > vertex_count()) {
    out_.resize(other.vertex_count());
    in_.resize(other.vertex_count());
  }
  for (const Arc& a : other.arcs()) add_arc(a);
  return *this;
}

Digraph& Digraph::operator-=(const Digraph& other) {
  for (const Arc& a : other.arcs()) remove_arc(a);
  return *this;
}

Digraph digraph_from_arcs(int vertex_count, std::span<const Arc> arcs) {
  Digraph d(vertex_count);
  for (const Arc& a : arcs) d.add_arc(a);
  return d;
}

Digraph digraph_from_cycle(int vertex_count, std::span<const Vertex> order) {
  Digraph d(vertex_count);
  for (std::size_t i = 0; i < order.size(); ++i) {
    d.add_arc(order[i], order[(i + 1) % order.size()]);
  }
  return d;
}

// --------------------------------------------------------- ClusterPartition

std::string_view to_string(PartitionMode mode) {
  switch (mode) {
    case PartitionMode::TwoCliques: return "two-cliques";
    case PartitionMode::Bipartite: return "bipartite";
    case PartitionMode::Plain: return "plain";
  }
  return "plain";
}

ClusterPartition::ClusterPartition(PartitionMode mode, int vertex_count,
                                   std::vector<std::vector<Vertex>> clusters,
                                   std::vector<Vertex> a0, std::vector<Vertex> b0)
    : mode_(mode),
      vertex_count_(vertex_count),
      clusters_(std::move(clusters)),
      a0_(std::move(a0)),
      b0_(std::move(b0)),
      cluster_of_(std::max(vertex_count, 0), -1),
      side_(std::max(vertex_count, 0), Side::None) {
  if (clusters_.empty()) fail(ErrorKind::MalformedInput, "partition without clusters");
  m_ = static_cast<int>(clusters_.front().size());
  if (m_ == 0) fail(ErrorKind::MalformedInput, "empty cluster");
  if (mode_ != PartitionMode::Plain && clusters_.size() % 2 != 0) {
    fail(ErrorKind::MalformedInput, "two-sided partition needs 2K clusters");
  }
  std::vector<char> used(vertex_count_, 0);
  auto claim = [&](Vertex v) {
    if (v < 0 || v >= vertex_count_) {
      fail(ErrorKind::MalformedInput, "partition vertex " + std::to_string(v) + " out of range");
    }
    if (used[v]) fail(ErrorKind::MalformedInput, "vertex " + std::to_string(v) + " in two parts");
    used[v] = 1;
  };
  const int half = static_cast<int>(clusters_.size()) / 2;
  for (int c = 0; c < cluster_count(); ++c) {
    if (static_cast<int>(clusters_[c].size()) != m_) {
      fail(ErrorKind::MalformedInput, "clusters differ in size");
    }
    for (Vertex v : clusters_[c]) {
      claim(v);
      cluster_of_[v] = c;
      if (mode_ != PartitionMode::Plain) side_[v] = c < half ? Side::A : Side::B;
    }
  }
  if (mode_ == PartitionMode::Plain && (!a0_.empty() || !b0_.empty())) {
    fail(ErrorKind::MalformedInput, "plain equipartition has no exceptional sets");
  }
  for (Vertex v : a0_) {
    claim(v);
    side_[v] = Side::A;
  }
  for (Vertex v : b0_) {
    claim(v);
    side_[v] = Side::B;
  }
}

ClusterPartition ClusterPartition::plain(int vertex_count,
                                         std::vector<std::vector<Vertex>> clusters) {
  return ClusterPartition(PartitionMode::Plain, vertex_count, std::move(clusters));
}

int ClusterPartition::side_cluster_count() const {
  return mode_ == PartitionMode::Plain ? cluster_count() : cluster_count() / 2;
}

int ClusterPartition::cluster_of(Vertex v) const {
  if (v < 0 || v >= vertex_count_) return -1;
  return cluster_of_[v];
}

Side ClusterPartition::side_of(Vertex v) const {
  if (v < 0 || v >= vertex_count_) return Side::None;
  return side_[v];
}

bool ClusterPartition::is_exceptional(Vertex v) const {
  return side_of(v) != Side::None && cluster_of(v) < 0;
}

int ClusterPartition::a_cluster(int i) const { return i; }
int ClusterPartition::b_cluster(int i) const { return side_cluster_count() + i; }

std::vector<Vertex> ClusterPartition::a_vertices() const {
  std::vector<Vertex> out;
  for (int i = 0; i < side_cluster_count(); ++i) {
    out.insert(out.end(), clusters_[a_cluster(i)].begin(), clusters_[a_cluster(i)].end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Vertex> ClusterPartition::b_vertices() const {
  std::vector<Vertex> out;
  if (mode_ == PartitionMode::Plain) return out;
  for (int i = 0; i < side_cluster_count(); ++i) {
    out.insert(out.end(), clusters_[b_cluster(i)].begin(), clusters_[b_cluster(i)].end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Vertex> ClusterPartition::a_prime() const {
  auto out = a_vertices();
  out.insert(out.end(), a0_.begin(), a0_.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Vertex> ClusterPartition::b_prime() const {
  auto out = b_vertices();
  out.insert(out.end(), b0_.begin(), b0_.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Vertex> ClusterPartition::exceptional() const {
  std::vector<Vertex> out = a0_;
  out.insert(out.end(), b0_.begin(), b0_.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Vertex> ClusterPartition::clustered_vertices() const {
  std::vector<Vertex> out;
  for (const auto& c : clusters_) out.insert(out.end(), c.begin(), c.end());
  std::sort(out.begin(), out.end());
  return out;
}

ClusterPartition ClusterPartition::restrict_to(std::span<const int> cluster_indices) const {
  std::vector<std::vector<Vertex>> picked;
  for (int c : cluster_indices) picked.push_back(clusters_.at(c));
  return plain(vertex_count_, std::move(picked));
}

// -------------------------------------------------------------- ClusterCycle

ClusterCycle::ClusterCycle(std::vector<int> order) : order_(std::move(order)) {
  position_.assign(order_.size(), -1);
  for (std::size_t i = 0; i < order_.size(); ++i) {
    const int c = order_[i];
    if (c < 0 || c >= static_cast<int>(order_.size()) || position_[c] != -1) {
      fail(ErrorKind::MalformedInput, "cluster cycle is not a permutation");
    }
    position_[c] = static_cast<int>(i);
  }
}

int ClusterCycle::next(int cluster) const {
  return order_[(position_of(cluster) + 1) % size()];
}

int ClusterCycle::prev(int cluster) const {
  return order_[(position_of(cluster) + size() - 1) % size()];
}

std::vector<std::pair<int, int>> ClusterCycle::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < size(); ++i) out.emplace_back(order_[i], order_[(i + 1) % size()]);
  return out;
}

// ---------------------------------------------------------------- predicates

bool verify_hamilton_cycle(const Multigraph& g, std::span<const Vertex> vertices) {
  const int k = static_cast<int>(vertices.size());
  if (k < 3) return false;
  std::vector<char> inside(g.vertex_count(), 0);
  for (Vertex v : vertices) {
    if (v < 0 || v >= g.vertex_count() || inside[v]) return false;
    inside[v] = 1;
  }
  for (Vertex v : vertices) {
    int d = 0;
    for (const auto& [w, mult] : g.neighbours(v)) {
      if (!inside[w]) continue;
      if (mult != 1) return false;
      d += mult;
    }
    if (d != 2) return false;
  }
  // Walk the 2-regular graph from the first vertex.
  Vertex prev = -1;
  Vertex cur = vertices[0];
  int steps = 0;
  do {
    Vertex nxt = -1;
    for (const auto& [w, mult] : g.neighbours(cur)) {
      if (inside[w] && w != prev) {
        nxt = w;
        break;
      }
    }
    prev = cur;
    cur = nxt;
    ++steps;
  } while (cur != vertices[0] && steps <= k);
  return steps == k;
}

bool verify_hamilton_cycle(const Digraph& g, std::span<const Vertex> vertices) {
  const int k = static_cast<int>(vertices.size());
  if (k < 2) return false;
  std::vector<char> inside(g.vertex_count(), 0);
  for (Vertex v : vertices) {
    if (v < 0 || v >= g.vertex_count() || inside[v]) return false;
    inside[v] = 1;
  }
  std::vector<Vertex> succ(g.vertex_count(), -1);
  for (Vertex v : vertices) {
    int outs = 0;
    int ins = 0;
    for (Vertex w : g.out(v)) {
      if (inside[w]) {
        ++outs;
        succ[v] = w;
      }
    }
    for (Vertex w : g.in(v)) ins += inside[w];
    if (outs != 1 || ins != 1) return false;
  }
  Vertex cur = vertices[0];
  int steps = 0;
  do {
    cur = succ[cur];
    ++steps;
  } while (cur != vertices[0] && steps <= k);
  return steps == k;
}

std::vector<Vertex> cycle_order(const Digraph& d) {
  const auto support = d.support();
  if (support.size() < 2 || !verify_hamilton_cycle(d, support)) return {};
  for (Vertex v : support) {
    if (d.out_degree(v) != 1 || d.in_degree(v) != 1) return {};
  }
  std::vector<Vertex> order;
  Vertex cur = support.front();
  do {
    order.push_back(cur);
    cur = *d.out(cur).begin();
  } while (cur != support.front());
  return order;
}

std::vector<std::vector<Vertex>> cycles_of_one_factor(const Digraph& f) {
  std::vector<std::vector<Vertex>> cycles;
  std::vector<char> seen(f.vertex_count(), 0);
  for (Vertex v : f.support()) {
    if (f.out_degree(v) != 1 || f.in_degree(v) != 1) {
      fail(ErrorKind::MalformedInput, "not a 1-factor at vertex " + std::to_string(v));
    }
  }
  for (Vertex v : f.support()) {
    if (seen[v]) continue;
    std::vector<Vertex> cyc;
    Vertex cur = v;
    while (!seen[cur]) {
      seen[cur] = 1;
      cyc.push_back(cur);
      cur = *f.out(cur).begin();
    }
    cycles.push_back(std::move(cyc));
  }
  return cycles;
}

namespace {

std::pair<int, int> arc_clusters(const Arc& a, const ClusterPartition& p) {
  const int ct = p.cluster_of(a.tail);
  const int ch = p.cluster_of(a.head);
  if (ct < 0 || ch < 0) {
    fail(ErrorKind::MalformedInput, "arc " + std::to_string(a.tail) + "->" +
                                        std::to_string(a.head) + " leaves the clusters");
  }
  return {ct, ch};
}

void check_cycle_matches(const ClusterPartition& p, const ClusterCycle& c) {
  if (c.size() != p.cluster_count()) {
    fail(ErrorKind::MalformedInput, "cluster cycle length differs from cluster count");
  }
}

}  // namespace

bool winds_around(const Digraph& d, const ClusterPartition& p, const ClusterCycle& c) {
  check_cycle_matches(p, c);
  bool ok = true;
  for (const Arc& a : d.arcs()) {
    const auto [ct, ch] = arc_clusters(a, p);
    if (c.next(ct) != ch) ok = false;
  }
  return ok;
}

bool is_locally_balanced(const Digraph& d, const ClusterPartition& p, const ClusterCycle& c) {
  check_cycle_matches(p, c);
  std::vector<int> starts(p.cluster_count(), 0);
  std::vector<int> ends(p.cluster_count(), 0);
  for (const Arc& a : d.arcs()) {
    const auto [ct, ch] = arc_clusters(a, p);
    ++starts[ct];
    ++ends[ch];
  }
  for (int x = 0; x < p.cluster_count(); ++x) {
    if (starts[x] != ends[c.next(x)]) return false;
  }
  return true;
}

bool is_consistent_with(const Digraph& cycle, std::span<const Arc> matching) {
  const auto order = cycle_order(cycle);
  if (order.empty()) fail(ErrorKind::MalformedInput, "consistency check needs a single cycle");
  if (matching.empty()) return true;
  for (const Arc& a : matching) {
    if (!cycle.has_arc(a)) return false;
  }
  std::vector<int> pos(cycle.vertex_count(), -1);
  for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = static_cast<int>(i);
  const int len = static_cast<int>(order.size());
  const int start = pos[matching.front().head];
  int last = -1;
  for (std::size_t j = 1; j < matching.size(); ++j) {
    const int offset = (pos[matching[j].tail] - start + len) % len;
    if (offset <= last) return false;
    last = offset;
  }
  return true;
}

bool is_path_system(const Multigraph& g) {
  std::vector<int> parent(g.vertex_count());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (g.degree(v) > 2) return false;
  }
  for (const Edge& e : g.edge_list()) {
    const int a = find(e.u);
    const int b = find(e.v);
    if (a == b) return false;
    parent[a] = b;
  }
  return true;
}

bool is_path_sequence(const Digraph& d) {
  for (Vertex v = 0; v < d.vertex_count(); ++v) {
    if (d.out_degree(v) > 1 || d.in_degree(v) > 1) return false;
  }
  long long walked = 0;
  for (Vertex v = 0; v < d.vertex_count(); ++v) {
    if (d.in_degree(v) != 0 || d.out_degree(v) == 0) continue;
    Vertex cur = v;
    while (d.out_degree(cur) == 1) {
      cur = *d.out(cur).begin();
      ++walked;
    }
  }
  return walked == d.arc_count();
}

}  // namespace hamdec

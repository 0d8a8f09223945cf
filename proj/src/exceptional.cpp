#include <algorithm>
#include <cmath>
#include <set>

#include "hamdec/exceptional.hpp"

namespace hamdec {

std::string_view to_string(SystemKind kind) {
  switch (kind) {
    case SystemKind::HES: return "HES";
    case SystemKind::MES: return "MES";
    case SystemKind::BES: return "BES";
  }
  return "?";
}

SystemKind system_kind_from_string(std::string_view text) {
  if (text == "HES") return SystemKind::HES;
  if (text == "MES") return SystemKind::MES;
  if (text == "BES") return SystemKind::BES;
  fail(ErrorKind::MalformedInput, "unknown system kind '" + std::string(text) + "'");
}

Multigraph ExceptionalSystem::graph(int vertex_count) const {
  Multigraph g(vertex_count);
  for (const auto& path : paths) {
    for (std::size_t k = 1; k < path.size(); ++k) g.add_edge(path[k - 1], path[k]);
  }
  return g;
}

std::vector<Vertex> ExceptionalSystem::vertices() const {
  std::vector<Vertex> out;
  for (const auto& path : paths) out.insert(out.end(), path.begin(), path.end());
  std::sort(out.begin(), out.end());
  return out;
}

long long ExceptionalSystem::edge_count() const {
  long long total = 0;
  for (const auto& path : paths) {
    if (!path.empty()) total += static_cast<long long>(path.size()) - 1;
  }
  return total;
}

namespace {

bool in_a(const ClusterPartition& p, Vertex v) {
  return !p.is_exceptional(v) && p.side_of(v) == Side::A;
}
bool in_b(const ClusterPartition& p, Vertex v) {
  return !p.is_exceptional(v) && p.side_of(v) == Side::B;
}

// Conditions shared by all kinds: a path system on distinct vertices in
// which exceptional vertices are interior and everything else is an end.
std::string check_cover(const ExceptionalSystem& system, const ClusterPartition& p) {
  const int n = p.vertex_count();
  std::vector<int> degree(n, 0);
  std::vector<char> seen(n, 0);
  for (const auto& path : system.paths) {
    if (path.empty()) return "empty path";
    for (std::size_t k = 0; k < path.size(); ++k) {
      const Vertex v = path[k];
      if (v < 0 || v >= n) return "vertex " + std::to_string(v) + " out of range";
      if (seen[v]) return "vertex " + std::to_string(v) + " repeated";
      seen[v] = 1;
      degree[v] = (k > 0) + (k + 1 < path.size());
    }
  }
  for (Vertex v : p.exceptional()) {
    if (degree[v] != 2) {
      return "exceptional vertex " + std::to_string(v) + " has degree " + std::to_string(degree[v]);
    }
  }
  for (Vertex v = 0; v < n; ++v) {
    if (!p.is_exceptional(v) && degree[v] > 1) {
      return "non-exceptional vertex " + std::to_string(v) + " is interior to a path";
    }
  }
  return {};
}

std::string check_locality(const ExceptionalSystem& system, const ClusterPartition& p) {
  if (system.locality.empty()) return {};
  const int K = p.side_cluster_count();
  const bool balanced = system.kind == SystemKind::BES;
  const std::size_t want = balanced ? 4 : 2;
  if (system.locality.size() != want) return "locality tag has the wrong arity";
  for (int i : system.locality) {
    if (i < 0 || i >= K) return "locality index out of range";
  }
  std::vector<int> allowed;
  if (balanced) {
    allowed = {p.a_cluster(system.locality[0]), p.a_cluster(system.locality[1]),
               p.b_cluster(system.locality[2]), p.b_cluster(system.locality[3])};
  } else {
    allowed = {p.a_cluster(system.locality[0]), p.b_cluster(system.locality[1])};
  }
  for (Vertex v : system.vertices()) {
    if (p.is_exceptional(v)) continue;
    if (std::find(allowed.begin(), allowed.end(), p.cluster_of(v)) == allowed.end()) {
      return "vertex " + std::to_string(v) + " outside the localized clusters";
    }
  }
  return {};
}

}  // namespace

int ab_path_count(const ExceptionalSystem& system, const ClusterPartition& p) {
  int count = 0;
  for (const auto& path : system.paths) {
    if (path.size() < 2) continue;
    const Vertex x = path.front();
    const Vertex y = path.back();
    if ((in_a(p, x) && in_b(p, y)) || (in_b(p, x) && in_a(p, y))) ++count;
  }
  return count;
}

std::string check_exceptional_system(const ExceptionalSystem& system, const ClusterPartition& p) {
  if (auto why = check_cover(system, p); !why.empty()) return why;
  const double n = p.vertex_count();
  if (system.kind == SystemKind::BES) {
    if (p.mode() != PartitionMode::Bipartite) return "balanced system needs a bipartite partition";
    if (system.locality.size() != 4) return "balanced system needs a 4-index locality";
    if (auto why = check_locality(system, p); !why.empty()) return why;
    const int a1 = p.a_cluster(system.locality[0]);
    const int a2 = p.a_cluster(system.locality[1]);
    const int b3 = p.b_cluster(system.locality[2]);
    const int b4 = p.b_cluster(system.locality[3]);
    int covered_a = 0;
    int covered_b = 0;
    std::set<Vertex> covered;
    for (const auto& path : system.paths) {
      for (std::size_t k = 1; k < path.size(); ++k) {
        const Vertex x = path[k - 1];
        const Vertex y = path[k];
        covered.insert(x);
        covered.insert(y);
        if (p.is_exceptional(x) || p.is_exceptional(y)) continue;
        const int cx = p.cluster_of(x);
        const int cy = p.cluster_of(y);
        const bool aa = (cx == a1 && cy == a2) || (cx == a2 && cy == a1);
        const bool bb = (cx == b3 && cy == b4) || (cx == b4 && cy == b3);
        if (!aa && !bb) {
          return "edge " + std::to_string(x) + "-" + std::to_string(y) +
                 " inside A u B is not between the tagged clusters";
        }
      }
    }
    for (Vertex v : covered) {
      covered_a += in_a(p, v);
      covered_b += in_b(p, v);
    }
    if (covered_a != covered_b) {
      return "edges cover " + std::to_string(covered_a) + " vertices of A but " +
             std::to_string(covered_b) + " of B";
    }
    if (static_cast<double>(system.edge_count()) > system.eps0 * n + 1e-9) {
      return "too many edges for eps0";
    }
    return {};
  }

  if (p.mode() != PartitionMode::TwoCliques) return "exceptional system needs a two-cliques partition";
  for (const auto& path : system.paths) {
    for (std::size_t k = 1; k < path.size(); ++k) {
      const Vertex x = path[k - 1];
      const Vertex y = path[k];
      if ((in_a(p, x) && in_a(p, y)) || (in_b(p, x) && in_b(p, y))) {
        return "edge " + std::to_string(x) + "-" + std::to_string(y) + " lies inside A or inside B";
      }
      if (system.kind == SystemKind::MES && p.side_of(x) != p.side_of(y)) {
        return "matching system has an A'B' edge " + std::to_string(x) + "-" + std::to_string(y);
      }
    }
  }
  const int ab = ab_path_count(system, p);
  if (system.kind == SystemKind::HES && (ab == 0 || ab % 2 != 0)) {
    return "Hamilton system has " + std::to_string(ab) + " AB-paths (needs even and positive)";
  }
  if (ab > std::sqrt(system.eps0) * n + 1e-9) return "too many AB-paths for eps0";
  return check_locality(system, p);
}

void validate_exceptional_system(const ExceptionalSystem& system, const ClusterPartition& p) {
  if (auto why = check_exceptional_system(system, p); !why.empty()) {
    fail(ErrorKind::InvalidExceptionalSystem, why);
  }
}

Multigraph FictiveReduction::fictive(int vertex_count) const {
  Multigraph g(vertex_count);
  for (const auto* list : {&a_dir, &b_dir, &dir}) {
    for (const Arc& a : *list) g.add_edge(a.tail, a.head);
  }
  return g;
}

std::vector<Edge> induce_jab(const ExceptionalSystem& system, const ClusterPartition& p) {
  validate_exceptional_system(system, p);
  std::vector<Edge> out;
  for (const auto& path : system.paths) {
    if (path.size() >= 2) out.emplace_back(path.front(), path.back());
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// AB edges of J*_AB as (A end, B end), sorted by the A end.
std::vector<std::pair<Vertex, Vertex>> ab_edges(const std::vector<Edge>& jab,
                                                const ClusterPartition& p) {
  std::vector<std::pair<Vertex, Vertex>> out;
  for (const Edge& e : jab) {
    if (in_a(p, e.u) && in_b(p, e.v)) out.emplace_back(e.u, e.v);
    if (in_b(p, e.u) && in_a(p, e.v)) out.emplace_back(e.v, e.u);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

FictiveReduction build_fictive_two_cliques(const ExceptionalSystem& system,
                                           const ClusterPartition& p) {
  if (system.kind == SystemKind::BES) {
    fail(ErrorKind::InvalidExceptionalSystem, "balanced system given to the two-cliques reduction");
  }
  FictiveReduction r;
  r.jab = induce_jab(system, p);
  const auto cross = ab_edges(r.jab, p);
  if (cross.size() % 2 != 0 || (system.kind == SystemKind::HES && cross.empty())) {
    fail(ErrorKind::InvalidExceptionalSystem,
         "AB-path count " + std::to_string(cross.size()) + " cannot be paired");
  }
  const std::size_t pairs = cross.size() / 2;
  for (std::size_t i = 0; i < pairs; ++i) {
    r.a_dir.push_back({cross[2 * i].first, cross[2 * i + 1].first});
  }
  for (std::size_t i = 0; i < pairs; ++i) {
    // y_{2i} -> y_{2i+1} in 1-based indices, wrapping to y_1.
    r.b_dir.push_back({cross[2 * i + 1].second, cross[(2 * i + 2) % cross.size()].second});
  }
  for (const Edge& e : r.jab) {
    if (in_a(p, e.u) && in_a(p, e.v)) r.a_dir.push_back({e.u, e.v});
    if (in_b(p, e.u) && in_b(p, e.v)) r.b_dir.push_back({e.u, e.v});
  }
  return r;
}

FictiveReduction build_fictive_bipartite(const ExceptionalSystem& system,
                                         const ClusterPartition& p) {
  if (system.kind != SystemKind::BES) {
    fail(ErrorKind::InvalidExceptionalSystem, "bipartite reduction needs a balanced system");
  }
  FictiveReduction r;
  r.jab = induce_jab(system, p);
  std::vector<Edge> inside_a;
  std::vector<Edge> inside_b;
  for (const Edge& e : r.jab) {
    if (in_a(p, e.u) && in_a(p, e.v)) inside_a.push_back(e);
    if (in_b(p, e.u) && in_b(p, e.v)) inside_b.push_back(e);
  }
  if (inside_a.size() != inside_b.size()) {
    fail(ErrorKind::InvalidExceptionalSystem, "J*_AB has " + std::to_string(inside_a.size()) +
                                                  " A-edges but " +
                                                  std::to_string(inside_b.size()) + " B-edges");
  }
  std::vector<Vertex> xs;
  std::vector<Vertex> ys;
  for (std::size_t i = 0; i < inside_a.size(); ++i) {
    xs.push_back(inside_a[i].u);
    xs.push_back(inside_a[i].v);
    ys.push_back(inside_b[i].u);
    ys.push_back(inside_b[i].v);
  }
  for (const auto& [x, y] : ab_edges(r.jab, p)) {
    xs.push_back(x);
    ys.push_back(y);
  }
  for (std::size_t i = 0; i < xs.size(); ++i) r.dir.push_back({xs[i], ys[i]});
  return r;
}

namespace {

void require_consistent(const Digraph& cycle, std::span<const Vertex> vertices,
                        std::span<const Arc> order, std::string_view label) {
  if (!verify_hamilton_cycle(cycle, vertices) ||
      cycle.arc_count() != static_cast<long long>(vertices.size())) {
    fail(ErrorKind::NotConsistent, std::string(label) + " is not a Hamilton cycle on its side");
  }
  if (!order.empty() && !is_consistent_with(cycle, order)) {
    fail(ErrorKind::NotConsistent, std::string(label) + " does not visit the fictive edges in order");
  }
}

}  // namespace

Multigraph splice_two_cliques(const Digraph& cycle_a, const Digraph& cycle_b,
                              const ExceptionalSystem& system, const FictiveReduction& reduction,
                              const ClusterPartition& p) {
  const int n = p.vertex_count();
  require_consistent(cycle_a, p.a_vertices(), reduction.a_dir, "A-side cycle");
  require_consistent(cycle_b, p.b_vertices(), reduction.b_dir, "B-side cycle");
  Multigraph out = cycle_a.underlying() + cycle_b.underlying();
  out -= reduction.fictive(n);
  out += system.graph(n);
  std::vector<Vertex> all(n);
  for (Vertex v = 0; v < n; ++v) all[v] = v;
  bool ok = false;
  if (system.kind == SystemKind::HES) {
    ok = verify_hamilton_cycle(out, all) && out.edge_count() == n;
  } else {
    const auto ap = p.a_prime();
    const auto bp = p.b_prime();
    ok = verify_hamilton_cycle(out, ap) && verify_hamilton_cycle(out, bp) &&
         out.edge_count() == static_cast<long long>(ap.size() + bp.size());
  }
  if (!ok) fail(ErrorKind::SpliceVerificationFailed, "spliced graph fails its shape check");
  return out;
}

Multigraph splice_bipartite(const Digraph& cycle, const ExceptionalSystem& system,
                            const FictiveReduction& reduction, const ClusterPartition& p) {
  const int n = p.vertex_count();
  std::vector<Vertex> sides = p.a_vertices();
  const auto bs = p.b_vertices();
  sides.insert(sides.end(), bs.begin(), bs.end());
  require_consistent(cycle, sides, reduction.dir, "cycle");
  Multigraph out = cycle.underlying();
  out -= reduction.fictive(n);
  out += system.graph(n);
  std::vector<Vertex> all(n);
  for (Vertex v = 0; v < n; ++v) all[v] = v;
  if (!verify_hamilton_cycle(out, all) || out.edge_count() != n) {
    fail(ErrorKind::SpliceVerificationFailed, "spliced graph is not a Hamilton cycle");
  }
  return out;
}

}  // namespace hamdec

#include <algorithm>
#include <numeric>

#include "hamdec/classic.hpp"
#include "hamdec/matching.hpp"

namespace hamdec {

std::vector<ClusterCycle> walecki_decompose(int K) {
  if (K < 3 || K % 2 == 0) {
    fail(ErrorKind::InvalidParameter, "walecki_decompose needs odd K >= 3, got " + std::to_string(K));
  }
  // Hub K-1, rim 0..K-2; cycle j zig-zags j, j+1, j-1, j+2, j-2, ...
  const int rim = K - 1;
  std::vector<ClusterCycle> cycles;
  for (int j = 0; j < rim / 2; ++j) {
    std::vector<int> order{K - 1, j};
    for (int step = 1; static_cast<int>(order.size()) < K; ++step) {
      order.push_back(((j + step) % rim + rim) % rim);
      if (static_cast<int>(order.size()) < K) order.push_back(((j - step) % rim + rim) % rim);
    }
    cycles.emplace_back(std::move(order));
  }
  return cycles;
}

std::vector<ClusterCycle> bipartite_hamilton_decompose(int K) {
  if (K < 2 || K % 2 != 0) {
    fail(ErrorKind::InvalidParameter,
         "bipartite_hamilton_decompose needs even K >= 2, got " + std::to_string(K));
  }
  // Cycle j uses the matchings A_i B_{i+2j} and A_i B_{i+2j+1}.
  std::vector<ClusterCycle> cycles;
  for (int j = 0; j < K / 2; ++j) {
    std::vector<int> order;
    for (int i = 0; i < K; ++i) {
      order.push_back(i);
      order.push_back(K + (2 * j + 1 + i) % K);
    }
    cycles.emplace_back(std::move(order));
  }
  return cycles;
}

namespace {

struct LocalBipartite {
  std::vector<int> left_index;   // global -> local, -1 if not left
  std::vector<int> right_index;
};

LocalBipartite index_sides(const Multigraph& g, std::span<const Vertex> left,
                           std::span<const Vertex> right) {
  if (left.size() != right.size()) {
    fail(ErrorKind::InvalidParameter, "bipartite classes differ in size");
  }
  LocalBipartite idx{std::vector<int>(g.vertex_count(), -1), std::vector<int>(g.vertex_count(), -1)};
  for (std::size_t i = 0; i < left.size(); ++i) {
    if (left[i] < 0 || left[i] >= g.vertex_count() || idx.left_index[left[i]] >= 0) {
      fail(ErrorKind::MalformedInput, "bad left vertex");
    }
    idx.left_index[left[i]] = static_cast<int>(i);
  }
  for (std::size_t i = 0; i < right.size(); ++i) {
    if (right[i] < 0 || right[i] >= g.vertex_count() || idx.right_index[right[i]] >= 0 ||
        idx.left_index[right[i]] >= 0) {
      fail(ErrorKind::MalformedInput, "bad right vertex");
    }
    idx.right_index[right[i]] = static_cast<int>(i);
  }
  return idx;
}

// Regular degree, or -1 if g is not a regular bipartite graph on left/right.
int regular_degree(const Multigraph& g, const LocalBipartite& idx, std::span<const Vertex> left,
                   std::span<const Vertex> right) {
  if (left.empty()) return g.edge_count() == 0 ? 0 : -1;
  for (const auto& e : g.entries()) {
    const bool lr = idx.left_index[e.u] >= 0 && idx.right_index[e.v] >= 0;
    const bool rl = idx.right_index[e.u] >= 0 && idx.left_index[e.v] >= 0;
    if (!lr && !rl) return -1;
  }
  const int r = g.degree(left.front());
  for (Vertex v : left) {
    if (g.degree(v) != r) return -1;
  }
  for (Vertex v : right) {
    if (g.degree(v) != r) return -1;
  }
  return r;
}

// Edge of a bipartite graph in local indices: left 0..m-1, right 0..m-1.
struct LocalEdge {
  int left;
  int right;
};

using LocalEdges = std::vector<LocalEdge>;

LocalEdges perfect_matching(const LocalEdges& edges, int m, std::span<const Vertex> left,
                            std::span<const Vertex> right) {
  std::vector<std::vector<int>> adjacency(m);
  for (const auto& e : edges) adjacency[e.left].push_back(e.right);
  const auto matching = hopcroft_karp(m, adjacency);
  if (matching.size != m) {
    throw HallViolation("regular bipartite graph without a perfect matching",
                        hall_violator(adjacency, matching, left, right));
  }
  LocalEdges out;
  out.reserve(m);
  for (int i = 0; i < m; ++i) out.push_back({i, matching.left_to_right[i]});
  return out;
}

// Removes one copy of every edge of `matching` from `edges`.
LocalEdges without_matching(const LocalEdges& edges, const LocalEdges& matching, int m) {
  std::vector<int> partner(m);
  for (const auto& e : matching) partner[e.left] = e.right;
  std::vector<char> taken(m, 0);
  LocalEdges out;
  out.reserve(edges.size() - matching.size());
  for (const auto& e : edges) {
    if (!taken[e.left] && partner[e.left] == e.right) {
      taken[e.left] = 1;
      continue;
    }
    out.push_back(e);
  }
  return out;
}

// Splits an even-regular graph into two halves by alternating edges along
// Euler circuits. Right vertex j is node m + j.
std::pair<LocalEdges, LocalEdges> euler_split(const LocalEdges& edges, int m) {
  const int n = 2 * m;
  std::vector<std::vector<int>> incident(n);
  for (int id = 0; id < static_cast<int>(edges.size()); ++id) {
    incident[edges[id].left].push_back(id);
    incident[m + edges[id].right].push_back(id);
  }
  std::vector<char> used(edges.size(), 0);
  std::vector<std::size_t> cursor(n, 0);
  std::pair<LocalEdges, LocalEdges> halves;
  halves.first.reserve(edges.size() / 2);
  halves.second.reserve(edges.size() / 2);
  std::vector<std::pair<int, int>> stack;
  std::vector<int> circuit;
  for (int start = 0; start < n; ++start) {
    if (cursor[start] >= incident[start].size()) continue;
    // Hierholzer with an explicit stack of (node, edge used to arrive).
    stack.assign(1, {start, -1});
    circuit.clear();
    while (!stack.empty()) {
      const int v = stack.back().first;
      auto& c = cursor[v];
      while (c < incident[v].size() && used[incident[v][c]]) ++c;
      if (c == incident[v].size()) {
        if (stack.back().second >= 0) circuit.push_back(stack.back().second);
        stack.pop_back();
        continue;
      }
      const int id = incident[v][c];
      used[id] = 1;
      const int w = v < m ? m + edges[id].right : edges[id].left;
      stack.emplace_back(w, id);
    }
    for (std::size_t pos = 0; pos < circuit.size(); ++pos) {
      (pos % 2 == 0 ? halves.first : halves.second).push_back(edges[circuit[pos]]);
    }
  }
  return halves;
}

void decompose_into(const LocalEdges& edges, int m, std::span<const Vertex> left,
                    std::span<const Vertex> right, int r, std::vector<LocalEdges>& out) {
  if (r == 0) return;
  if (r == 1) {
    out.push_back(edges);
    return;
  }
  if (r % 2 == 1) {
    auto matching = perfect_matching(edges, m, left, right);
    decompose_into(without_matching(edges, matching, m), m, left, right, r - 1, out);
    out.push_back(std::move(matching));
    return;
  }
  const auto [first, second] = euler_split(edges, m);
  decompose_into(first, m, left, right, r / 2, out);
  decompose_into(second, m, left, right, r / 2, out);
}

}  // namespace

std::vector<Multigraph> regular_bipartite_to_matchings(const Multigraph& g,
                                                       std::span<const Vertex> left,
                                                       std::span<const Vertex> right) {
  const auto idx = index_sides(g, left, right);
  const int r = regular_degree(g, idx, left, right);
  if (r < 0) fail(ErrorKind::InvalidParameter, "input is not a regular bipartite multigraph");
  const int m = static_cast<int>(left.size());
  LocalEdges edges;
  edges.reserve(g.edge_count());
  for (const auto& e : g.entries()) {
    const bool forward = idx.left_index[e.u] >= 0;
    const LocalEdge local{idx.left_index[forward ? e.u : e.v], idx.right_index[forward ? e.v : e.u]};
    for (int copy = 0; copy < e.multiplicity; ++copy) edges.push_back(local);
  }
  std::vector<LocalEdges> parts;
  parts.reserve(r);
  decompose_into(edges, m, left, right, r, parts);
  std::vector<Multigraph> out;
  out.reserve(r);
  for (const auto& part : parts) {
    Multigraph matching(g.vertex_count());
    for (const auto& e : part) matching.add_edge(left[e.left], right[e.right]);
    out.push_back(std::move(matching));
  }
  Multigraph total(g.vertex_count());
  for (const auto& m : out) {
    if (m.edge_count() != static_cast<long long>(left.size())) {
      fail(ErrorKind::MatchingInfeasible, "decomposition produced a non-perfect matching");
    }
    total += m;
  }
  if (!(total == g)) fail(ErrorKind::MatchingInfeasible, "matchings do not sum to the input");
  return out;
}

std::vector<Multigraph> split_regular(const Multigraph& g, std::span<const Vertex> left,
                                      std::span<const Vertex> right, int parts, int degree) {
  if (parts < 0 || degree < 0) fail(ErrorKind::InvalidParameter, "negative split parameters");
  const auto idx = index_sides(g, left, right);
  const int r = regular_degree(g, idx, left, right);
  if (r < 0) fail(ErrorKind::InvalidParameter, "input is not a regular bipartite multigraph");
  if (static_cast<long long>(parts) * degree > r) {
    fail(ErrorKind::InvalidParameter, std::to_string(parts) + " x " + std::to_string(degree) +
                                          " exceeds degree " + std::to_string(r));
  }
  if (parts == 1 && degree == r) return {g};
  auto matchings = regular_bipartite_to_matchings(g, left, right);
  std::vector<Multigraph> out(parts, Multigraph(g.vertex_count()));
  for (int p = 0; p < parts; ++p) {
    for (int k = 0; k < degree; ++k) out[p] += matchings[p * degree + k];
  }
  return out;
}

}  // namespace hamdec

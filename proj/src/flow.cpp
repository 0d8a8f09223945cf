#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "hamdec/classic.hpp"

namespace hamdec {

namespace {

// Dinic blocking-flow max flow on integral capacities.
class Dinic {
 public:
  explicit Dinic(int nodes) : head_(nodes, -1), level_(nodes), cursor_(nodes) {}

  int add(int from, int to, long long capacity) {
    const int id = static_cast<int>(to_.size());
    push(from, to, capacity);
    push(to, from, 0);
    return id;
  }

  long long run(int source, int sink) {
    long long total = 0;
    while (bfs(source, sink)) {
      cursor_ = head_;
      while (long long pushed = dfs(source, sink, std::numeric_limits<long long>::max())) {
        total += pushed;
      }
    }
    return total;
  }

  long long flow_on(int edge) const { return cap_[edge ^ 1]; }

  // Source side of a minimum cut after run().
  std::vector<char> source_side(int source) const {
    std::vector<char> seen(head_.size(), 0);
    std::deque<int> queue{source};
    seen[source] = 1;
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      for (int e = head_[u]; e != -1; e = next_[e]) {
        if (cap_[e] > 0 && !seen[to_[e]]) {
          seen[to_[e]] = 1;
          queue.push_back(to_[e]);
        }
      }
    }
    return seen;
  }

 private:
  void push(int from, int to, long long capacity) {
    to_.push_back(to);
    cap_.push_back(capacity);
    next_.push_back(head_[from]);
    head_[from] = static_cast<int>(to_.size()) - 1;
  }

  bool bfs(int source, int sink) {
    std::fill(level_.begin(), level_.end(), -1);
    std::deque<int> queue{source};
    level_[source] = 0;
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      for (int e = head_[u]; e != -1; e = next_[e]) {
        if (cap_[e] > 0 && level_[to_[e]] < 0) {
          level_[to_[e]] = level_[u] + 1;
          queue.push_back(to_[e]);
        }
      }
    }
    return level_[sink] >= 0;
  }

  long long dfs(int u, int sink, long long limit) {
    if (u == sink) return limit;
    for (int& e = cursor_[u]; e != -1; e = next_[e]) {
      const int v = to_[e];
      if (cap_[e] <= 0 || level_[v] != level_[u] + 1) continue;
      if (long long got = dfs(v, sink, std::min(limit, cap_[e]))) {
        cap_[e] -= got;
        cap_[e ^ 1] += got;
        return got;
      }
    }
    return 0;
  }

  std::vector<int> head_;
  std::vector<int> to_;
  std::vector<long long> cap_;
  std::vector<int> next_;
  std::vector<int> level_;
  std::vector<int> cursor_;
};

void check_sides(const Multigraph& g, std::span<const Vertex> left, std::span<const Vertex> right) {
  if (left.size() != right.size()) {
    fail(ErrorKind::MalformedInput, "bipartite classes differ in size");
  }
  std::vector<char> mark(g.vertex_count(), 0);
  for (Vertex v : left) {
    if (v < 0 || v >= g.vertex_count() || mark[v]) {
      fail(ErrorKind::MalformedInput, "bad or repeated left vertex " + std::to_string(v));
    }
    mark[v] = 1;
  }
  for (Vertex v : right) {
    if (v < 0 || v >= g.vertex_count() || mark[v]) {
      fail(ErrorKind::MalformedInput, "bad or repeated right vertex " + std::to_string(v));
    }
    mark[v] = 2;
  }
}

}  // namespace

int regular_degree_target(int m, double mu, double rho) {
  return static_cast<int>(std::floor((1.0 - mu - rho) * m + 1e-9));
}

Multigraph regular_subgraph_exact(const Multigraph& g, std::span<const Vertex> left,
                                  std::span<const Vertex> right, int degree) {
  check_sides(g, left, right);
  const int m = static_cast<int>(left.size());
  if (degree < 0) fail(ErrorKind::InvalidParameter, "negative degree target");
  Multigraph out(g.vertex_count());
  if (degree == 0 || m == 0) return out;

  std::vector<int> right_index(g.vertex_count(), -1);
  for (int j = 0; j < m; ++j) right_index[right[j]] = j;
  const int source = 2 * m;
  const int sink = 2 * m + 1;
  Dinic net(2 * m + 2);
  struct Link {
    int edge;
    Vertex u;
    Vertex v;
  };
  std::vector<Link> links;
  for (int i = 0; i < m; ++i) {
    net.add(source, i, degree);
    for (const auto& [v, mult] : g.neighbours(left[i])) {
      const int j = right_index[v];
      if (j >= 0) links.push_back({net.add(i, m + j, mult), left[i], v});
    }
  }
  for (int j = 0; j < m; ++j) net.add(m + j, sink, degree);

  const long long want = static_cast<long long>(degree) * m;
  const long long got = net.run(source, sink);
  if (got < want) {
    const auto side = net.source_side(source);
    CutWitness w;
    w.target = degree;
    for (int i = 0; i < m; ++i) {
      if (side[i]) w.left.push_back(left[i]);
    }
    for (int j = 0; j < m; ++j) {
      if (side[m + j]) w.right.push_back(right[j]);
    }
    std::vector<char> in_s2(g.vertex_count(), 0);
    for (Vertex v : w.right) in_s2[v] = 1;
    for (Vertex u : w.left) {
      for (const auto& [v, mult] : g.neighbours(u)) {
        if (right_index[v] >= 0 && !in_s2[v]) w.crossing += mult;
      }
    }
    throw CutViolation("flow " + std::to_string(got) + " < " + std::to_string(want) +
                           " for a " + std::to_string(degree) + "-regular subgraph",
                       std::move(w));
  }
  for (const Link& l : links) {
    const long long f = net.flow_on(l.edge);
    if (f > 0) out.add_edge(l.u, l.v, static_cast<int>(f));
  }
  return out;
}

Multigraph regular_spanning_subgraph(const Multigraph& g, std::span<const Vertex> left,
                                     std::span<const Vertex> right, double mu, double rho) {
  const int m = static_cast<int>(left.size());
  return regular_subgraph_exact(g, left, right, regular_degree_target(m, mu, rho));
}

bool witness_violates_cut_bound(const Multigraph& g, std::span<const Vertex> right,
                                const CutWitness& witness) {
  std::vector<char> in_right(g.vertex_count(), 0);
  for (Vertex v : right) in_right[v] = 1;
  for (Vertex v : witness.right) {
    if (v < 0 || v >= g.vertex_count() || !in_right[v]) return false;
    in_right[v] = 2;  // S2
  }
  long long crossing = 0;
  for (Vertex u : witness.left) {
    for (const auto& [v, mult] : g.neighbours(u)) {
      if (in_right[v] == 1) crossing += mult;
    }
  }
  const long long bound = static_cast<long long>(witness.target) *
                          (static_cast<long long>(witness.left.size()) -
                           static_cast<long long>(witness.right.size()));
  return crossing < bound;
}

}  // namespace hamdec

#include <algorithm>
#include <numeric>

#include "hamdec/hamilton_search.hpp"
#include "hamdec/matching.hpp"
#include "hamdec/rng.hpp"

namespace hamdec {

bool visits_in_order(std::span<const Vertex> order, std::span<const Vertex> waypoints) {
  if (waypoints.empty()) return true;
  std::vector<int> position;
  for (Vertex w : waypoints) {
    auto it = std::find(order.begin(), order.end(), w);
    if (it == order.end()) return false;
    position.push_back(static_cast<int>(it - order.begin()));
  }
  const int len = static_cast<int>(order.size());
  int previous = 0;
  for (std::size_t t = 1; t < position.size(); ++t) {
    const int offset = ((position[t] - position[0]) % len + len) % len;
    if (offset <= previous) return false;
    previous = offset;
  }
  return true;
}

namespace {

class Searcher {
 public:
  Searcher(const Digraph& d, std::span<const Vertex> waypoints, std::uint64_t seed,
           const SearchBudget& budget)
      : d_(d), n_(d.vertex_count()), waypoints_(waypoints.begin(), waypoints.end()),
        rng_(seed), budget_(budget) {}

  std::vector<Vertex> run() {
    for (int attempt = 0; attempt < budget_.restarts; ++attempt) {
      std::vector<Vertex> order = waypoints_.size() <= 2 ? patch() : depth_first();
      if (!order.empty() && visits_in_order(order, waypoints_)) return order;
    }
    return {};
  }

 private:
  // Cycle factor from a random perfect matching, then 2-swaps joining
  // cycles; a swap inside one cycle splits it and perturbs the factor.
  std::vector<Vertex> patch() {
    std::vector<std::vector<int>> adjacency(n_);
    for (Vertex u = 0; u < n_; ++u) {
      adjacency[u].assign(d_.out(u).begin(), d_.out(u).end());
      rng_.shuffle(adjacency[u]);
    }
    const auto matching = hopcroft_karp(n_, adjacency);
    if (matching.size != n_) return {};
    std::vector<Vertex> next = matching.left_to_right;
    std::vector<Vertex> prev(n_);
    std::vector<int> cycle_id(n_);
    auto relabel = [&] {
      std::fill(cycle_id.begin(), cycle_id.end(), -1);
      int count = 0;
      for (Vertex s = 0; s < n_; ++s) {
        if (cycle_id[s] >= 0) continue;
        for (Vertex v = s; cycle_id[v] < 0; v = next[v]) cycle_id[v] = count;
        ++count;
      }
      for (Vertex v = 0; v < n_; ++v) prev[next[v]] = v;
      return count;
    };
    int cycles = relabel();
    std::vector<Vertex> order(n_);
    std::iota(order.begin(), order.end(), 0);
    const long long steps = static_cast<long long>(budget_.steps_per_vertex) * n_;
    for (long long step = 0; step < steps && cycles > 1; ++step) {
      rng_.shuffle(order);
      bool merged = false;
      for (Vertex u : order) {
        for (Vertex target : adjacency[u]) {
          if (cycle_id[target] == cycle_id[u]) continue;
          const Vertex w = prev[target];
          if (d_.has_arc(w, next[u])) {
            std::swap(next[u], next[w]);
            merged = true;
            break;
          }
        }
        if (merged) break;
      }
      if (!merged) {
        // Split a cycle at a random valid pair to change the structure.
        for (int tries = 0; tries < 4 * n_; ++tries) {
          const Vertex u = static_cast<Vertex>(rng_.below(n_));
          const auto& outs = adjacency[u];
          if (outs.empty()) continue;
          const Vertex target = outs[rng_.below(outs.size())];
          const Vertex w = prev[target];
          if (w == u || cycle_id[w] != cycle_id[u] || target == next[u]) continue;
          if (d_.has_arc(w, next[u])) {
            std::swap(next[u], next[w]);
            break;
          }
        }
      }
      cycles = relabel();
    }
    if (cycles != 1) return {};
    std::vector<Vertex> out;
    Vertex v = waypoints_.empty() ? 0 : waypoints_.front();
    for (int t = 0; t < n_; ++t, v = next[v]) out.push_back(v);
    return out;
  }

  // Backtracking from the first waypoint, fewest-onward-options first,
  // refusing to enter a waypoint out of turn.
  std::vector<Vertex> depth_first() {
    std::vector<int> waypoint_rank(n_, -1);
    for (std::size_t t = 0; t < waypoints_.size(); ++t) waypoint_rank[waypoints_[t]] = static_cast<int>(t);
    const Vertex start = waypoints_.front();
    std::vector<char> on_path(n_, 0);
    std::vector<Vertex> path{start};
    on_path[start] = 1;
    std::vector<std::vector<Vertex>> options(1);
    std::vector<std::size_t> cursor(1, 0);
    int next_rank = 1;
    auto candidates = [&](Vertex v) {
      std::vector<std::pair<int, Vertex>> scored;
      for (Vertex w : d_.out(v)) {
        if (on_path[w]) continue;
        if (waypoint_rank[w] >= 0 && waypoint_rank[w] != next_rank) continue;
        int onward = 0;
        for (Vertex x : d_.out(w)) onward += !on_path[x];
        scored.emplace_back(onward * 1024 + static_cast<int>(rng_.below(1024)), w);
      }
      std::sort(scored.begin(), scored.end());
      std::vector<Vertex> out;
      for (const auto& [score, w] : scored) out.push_back(w);
      return out;
    };
    options[0] = candidates(start);
    long long expansions = 0;
    const long long limit = 100LL * n_;
    while (!path.empty() && expansions < limit) {
      if (static_cast<int>(path.size()) == n_) {
        if (d_.has_arc(path.back(), start)) return path;
      }
      auto& cur = cursor.back();
      if (static_cast<int>(path.size()) == n_ || cur >= options.back().size()) {
        const Vertex back = path.back();
        on_path[back] = 0;
        if (waypoint_rank[back] >= 1) --next_rank;
        path.pop_back();
        options.pop_back();
        cursor.pop_back();
        if (!cursor.empty()) ++cursor.back();
        continue;
      }
      const Vertex w = options.back()[cur];
      ++expansions;
      on_path[w] = 1;
      if (waypoint_rank[w] >= 1) ++next_rank;
      path.push_back(w);
      options.push_back(candidates(w));
      cursor.push_back(0);
    }
    return {};
  }

  const Digraph& d_;
  int n_;
  std::vector<Vertex> waypoints_;
  Rng rng_;
  SearchBudget budget_;
};

}  // namespace

Digraph find_ordered_hamilton(const Digraph& d, std::span<const Vertex> waypoints,
                              std::uint64_t seed, const SearchBudget& budget) {
  const int n = d.vertex_count();
  for (Vertex w : waypoints) {
    if (w < 0 || w >= n) fail(ErrorKind::MalformedInput, "waypoint out of range");
  }
  if (n < 2) {
    fail(ErrorKind::HamiltonSearchExhausted, "a directed Hamilton cycle needs at least 2 vertices");
  }
  Searcher searcher(d, waypoints, seed, budget);
  const auto order = searcher.run();
  if (order.empty()) {
    fail(ErrorKind::HamiltonSearchExhausted,
         "no Hamilton cycle found after " + std::to_string(budget.restarts) + " restarts on " +
             std::to_string(n) + " vertices");
  }
  Digraph out = digraph_from_cycle(n, order);
  std::vector<Vertex> all(n);
  std::iota(all.begin(), all.end(), 0);
  if (!verify_hamilton_cycle(out, all) || !visits_in_order(order, waypoints)) {
    fail(ErrorKind::HamiltonSearchExhausted, "search produced an invalid cycle");
  }
  for (const Arc& a : out.arcs()) {
    if (!d.has_arc(a)) fail(ErrorKind::HamiltonSearchExhausted, "search used a missing arc");
  }
  return out;
}

}  // namespace hamdec

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "hamdec/classic.hpp"
#include "hamdec/extension.hpp"

namespace hamdec {

namespace {

constexpr double kTol = 1e-9;

// Edges of a perfect matching listed by their `left` endpoint.
std::vector<Edge> sorted_matching(const Multigraph& matching) {
  auto edges = matching.edge_list();
  std::sort(edges.begin(), edges.end());
  return edges;
}

// Cuts each matching into consecutive runs of `chunk` edges. The final
// short run of a matching is merged into the previous one.
std::vector<std::vector<Edge>> cut_chunks(const std::vector<Multigraph>& matchings, int chunk) {
  std::vector<std::vector<Edge>> out;
  for (const auto& matching : matchings) {
    const auto edges = sorted_matching(matching);
    const std::size_t pieces = std::max<std::size_t>(1, edges.size() / chunk);
    for (std::size_t p = 0; p < pieces; ++p) {
      const auto begin = edges.begin() + p * chunk;
      const auto end = p + 1 == pieces ? edges.end() : begin + chunk;
      out.emplace_back(begin, end);
    }
  }
  return out;
}

int pair_degree(const Multigraph& h, const std::vector<Vertex>& left, const std::vector<Vertex>& right) {
  const int r = left.empty() ? 0 : h.degree_into(left.front(), right);
  for (Vertex v : left) {
    if (h.degree_into(v, right) != r) return -1;
  }
  for (Vertex v : right) {
    if (h.degree_into(v, left) != r) return -1;
  }
  return r;
}

void check_inside(const OrderedDirectedMatching& matching, const ClusterPartition& q,
                  std::span<const int> allowed) {
  if (!is_vertex_disjoint(matching)) fail(ErrorKind::MalformedInput, "request is not a matching");
  for (const Arc& a : matching) {
    for (Vertex v : {a.tail, a.head}) {
      const int c = q.cluster_of(v);
      if (std::find(allowed.begin(), allowed.end(), c) == allowed.end()) {
        fail(ErrorKind::MalformedInput, "matching vertex " + std::to_string(v) + " outside its clusters");
      }
    }
  }
}

// Orients `h` low to high, except arcs already fixed in `fixed`.
Digraph orient_rest(const Multigraph& h, const Digraph& fixed) {
  Digraph d = fixed;
  for (const auto& e : h.entries()) {
    if (!fixed.has_arc(e.u, e.v) && !fixed.has_arc(e.v, e.u)) d.add_arc(e.u, e.v);
  }
  return d;
}

}  // namespace

ExtensionResult balance_extend_cliques(std::span<const CliqueExtensionRequest> requests,
                                       const ClusterPartition& q, const ClusterCycle& cycle,
                                       const Multigraph& reserve) {
  const int k = q.cluster_count();
  const int m = q.cluster_size();
  const int n = reserve.vertex_count();
  if (k < 3 || cycle.size() != k) fail(ErrorKind::MalformedInput, "need a cluster cycle on at least 3 clusters");

  int degree = -1;
  std::vector<std::vector<std::vector<Edge>>> pools(k);
  std::vector<std::size_t> next_chunk(k, 0);
  Digraph fixed(n);
  bool any_request = false;
  for (const auto& req : requests) any_request = any_request || !req.matching.empty();
  int chunk = 0;
  for (int i = 0; i < k; ++i) {
    const int pred = cycle.prev(i);
    const int succ = cycle.next(i);
    const int r = pair_degree(reserve, q.cluster(pred), q.cluster(succ));
    if (r < 0 || (degree >= 0 && r != degree)) {
      fail(ErrorKind::ReservoirExhausted, "reserve between the neighbours of cluster " +
                                              std::to_string(i) + " is not regular of a common degree");
    }
    degree = r;
  }
  const double eps = static_cast<double>(degree) / (2.0 * m);
  chunk = std::max(1, static_cast<int>(std::ceil(eps * m - kTol)));
  if (any_request) {
    for (int i = 0; i < k; ++i) {
      const int pred = cycle.prev(i);
      const int succ = cycle.next(i);
      const Multigraph pair = reserve.between(q.cluster(pred), q.cluster(succ));
      pools[i] = cut_chunks(regular_bipartite_to_matchings(pair, q.cluster(pred), q.cluster(succ)), chunk);
      // The whole pair is oriented from the predecessor to the successor.
      for (const auto& e : pair.entries()) {
        const bool forward = q.cluster_of(e.u) == pred;
        fixed.add_arc(forward ? e.u : e.v, forward ? e.v : e.u);
      }
    }
  }

  ExtensionResult out{Digraph(n), {}};
  out.extension.eps = 2 * eps;
  out.extension.ell = 3;
  for (const auto& req : requests) {
    if (req.cluster < 0 || req.cluster >= k) fail(ErrorKind::MalformedInput, "request cluster out of range");
    const int allowed[] = {req.cluster};
    check_inside(req.matching, q, allowed);
    Digraph ps = digraph_from_arcs(n, req.matching);
    if (!req.matching.empty()) {
      auto& pool = pools[req.cluster];
      auto& next = next_chunk[req.cluster];
      if (next >= pool.size()) {
        fail(ErrorKind::ReservoirExhausted, "no unused reserve matching left around cluster " +
                                                std::to_string(req.cluster));
      }
      const auto& piece = pool[next++];
      if (piece.size() < req.matching.size()) {
        fail(ErrorKind::ReservoirExhausted, "reserve matching of " + std::to_string(piece.size()) +
                                                " edges is smaller than a request of " +
                                                std::to_string(req.matching.size()));
      }
      const int pred = cycle.prev(req.cluster);
      for (std::size_t t = 0; t < req.matching.size(); ++t) {
        const Edge& e = piece[t];
        const bool forward = q.cluster_of(e.u) == pred;
        ps.add_arc(forward ? e.u : e.v, forward ? e.v : e.u);
      }
    }
    out.extension.sequences.push_back(std::move(ps));
    out.extension.sources.push_back(req.matching);
    out.extension.extension_cluster.push_back(req.cluster);
  }
  out.oriented_reserve = orient_rest(reserve, fixed);
  return out;
}

ExtensionResult balance_extend_bipartite(std::span<const BipartiteExtensionRequest> requests,
                                         const ClusterPartition& q, const ClusterCycle& cycle,
                                         const Multigraph& reserve,
                                         const BipartiteExtensionConfig& config) {
  const int k = q.cluster_count();
  const int K = k / 2;
  const int m = q.cluster_size();
  const int n = reserve.vertex_count();
  if (k < 4 || k % 2 != 0 || cycle.size() != k) {
    fail(ErrorKind::MalformedInput, "need a cluster cycle on 2K clusters");
  }
  if (config.chunk <= 0 || config.phase_one_degree < 0) {
    fail(ErrorKind::InvalidParameter, "chunk size must be positive");
  }
  // Pair key: (A cluster, B cluster) in Q indices; A clusters are 0..K-1.
  auto key_of = [K](int x, int y) { return x < K ? std::make_pair(x, y) : std::make_pair(y, x); };

  Multigraph phase_one(n);
  std::map<std::pair<int, int>, std::vector<std::vector<Edge>>> pools;
  std::map<std::pair<int, int>, std::size_t> next_chunk;
  for (int a = 0; a < K; ++a) {
    for (int b = K; b < k; ++b) {
      const Multigraph pair = reserve.between(q.cluster(a), q.cluster(b));
      const int r = pair_degree(pair, q.cluster(a), q.cluster(b));
      if (r < config.phase_one_degree) {
        fail(ErrorKind::ReservoirExhausted, "reserve pair " + std::to_string(a) + "-" + std::to_string(b) +
                                                " is not regular of degree at least " +
                                                std::to_string(config.phase_one_degree));
      }
      auto matchings = regular_bipartite_to_matchings(pair, q.cluster(a), q.cluster(b));
      for (int t = 0; t < config.phase_one_degree; ++t) phase_one += matchings[t];
      std::vector<Multigraph> rest(matchings.begin() + config.phase_one_degree, matchings.end());
      pools[{a, b}] = cut_chunks(rest, std::min(config.chunk, m));
      next_chunk[{a, b}] = 0;
    }
  }

  ExtensionResult out{Digraph(n), {}};
  out.extension.eps = 12.0 * config.eps * K;
  out.extension.ell = 12;
  Digraph fixed(n);
  for (const auto& req : requests) {
    check_inside(req.matching, q, req.clusters);
    const int home = req.clusters[0];
    if (home < 0 || home >= K) fail(ErrorKind::MalformedInput, "first tagged cluster must be an A cluster");
    for (const Arc& a : req.matching) {
      if (q.cluster_of(a.tail) >= K || q.cluster_of(a.head) < K) {
        fail(ErrorKind::MalformedInput, "fictive arcs must run from A to B");
      }
    }
    Digraph ps = digraph_from_arcs(n, req.matching);
    std::set<Vertex> blocked;
    for (const Arc& a : req.matching) {
      blocked.insert(a.tail);
      blocked.insert(a.head);
    }

    // Phase 1: attach every B end to a fresh vertex of the home cluster.
    std::vector<Vertex> b_ends;
    for (const Arc& a : req.matching) b_ends.push_back(a.head);
    std::sort(b_ends.begin(), b_ends.end());
    std::vector<Arc> attached;
    for (Vertex y : b_ends) {
      Vertex chosen = -1;
      for (Vertex a : q.cluster(home)) {
        if (!blocked.count(a) && phase_one.has_edge(y, a)) {
          chosen = a;
          break;
        }
      }
      if (chosen < 0) {
        fail(ErrorKind::ReservoirExhausted, "vertex " + std::to_string(y) +
                                                " has no unused first-phase reserve edge into cluster " +
                                                std::to_string(home));
      }
      blocked.insert(chosen);
      phase_one.remove_edge(y, chosen);
      attached.push_back({y, chosen});
      ps.add_arc(y, chosen);
      fixed.add_arc(y, chosen);
    }

    // Phase 2: one balancing arc per arc, from pred(head cluster) to
    // succ(tail cluster), taken from a reserve chunk owned by this request.
    std::vector<Arc> arcs(req.matching.begin(), req.matching.end());
    arcs.insert(arcs.end(), attached.begin(), attached.end());
    std::map<std::pair<std::pair<int, int>, bool>, std::vector<Edge>*> owned;
    std::vector<std::vector<Edge>> claimed;
    claimed.reserve(arcs.size());
    for (const Arc& e : arcs) {
      const int from = cycle.prev(q.cluster_of(e.head));
      const int to = cycle.next(q.cluster_of(e.tail));
      const auto pair = key_of(from, to);
      const bool a_to_b = from < K;
      auto it = owned.find({pair, a_to_b});
      if (it == owned.end()) {
        auto& pool = pools.at(pair);
        auto& next = next_chunk[pair];
        if (next >= pool.size()) {
          fail(ErrorKind::ReservoirExhausted, "no reserve chunk left for pair " +
                                                  std::to_string(pair.first) + "-" +
                                                  std::to_string(pair.second));
        }
        claimed.push_back(pool[next++]);
        it = owned.emplace(std::make_pair(pair, a_to_b), &claimed.back()).first;
      }
      auto& piece = *it->second;
      auto pick = std::find_if(piece.begin(), piece.end(), [&](const Edge& f) {
        return !blocked.count(f.u) && !blocked.count(f.v);
      });
      if (pick == piece.end()) {
        fail(ErrorKind::ReservoirExhausted, "reserve chunk for pair " + std::to_string(pair.first) + "-" +
                                                std::to_string(pair.second) +
                                                " has no edge avoiding the path sequence");
      }
      const bool forward = q.cluster_of(pick->u) == from;
      const Arc f{forward ? pick->u : pick->v, forward ? pick->v : pick->u};
      blocked.insert(f.tail);
      blocked.insert(f.head);
      piece.erase(pick);
      ps.add_arc(f);
      fixed.add_arc(f);
    }
    out.extension.sequences.push_back(std::move(ps));
    out.extension.sources.push_back(req.matching);
    out.extension.extension_cluster.push_back(home);
  }
  out.oriented_reserve = orient_rest(reserve, fixed);
  return out;
}

std::vector<std::string> check_balanced_extension(const BalancedExtension& be,
                                                  const ClusterPartition& q,
                                                  const ClusterCycle& cycle) {
  std::vector<std::string> failures;
  const std::size_t count = be.sequences.size();
  if (be.sources.size() != count || be.extension_cluster.size() != count) {
    failures.push_back("sequence, source and cluster lists differ in length");
    return failures;
  }
  const int k = q.cluster_count();
  const int m = q.cluster_size();
  const double quota = be.ell * m / k + kTol;
  const double cap = be.eps * m + kTol;
  std::vector<int> home_count(k, 0);
  std::vector<int> touch_count(k, 0);
  std::map<Edge, int> extra_owner;
  for (std::size_t s = 0; s < count; ++s) {
    const Digraph& ps = be.sequences[s];
    const auto& source = be.sources[s];
    const std::string tag = "sequence " + std::to_string(s) + ": ";
    if (!is_path_sequence(ps)) failures.push_back(tag + "not a path sequence");
    try {
      if (!is_locally_balanced(ps, q, cycle)) failures.push_back(tag + "not locally balanced");
    } catch (const Error& e) {
      failures.push_back(tag + e.detail());
      continue;
    }
    // Arcs beyond the source matching must be edge-disjoint across sequences.
    for (const Arc& a : ps.arcs()) {
      if (std::find(source.begin(), source.end(), a) != source.end()) continue;
      const Edge e(a.tail, a.head);
      auto [it, fresh] = extra_owner.emplace(e, static_cast<int>(s));
      if (!fresh && it->second != static_cast<int>(s)) {
        failures.push_back(tag + "shares an added edge with sequence " + std::to_string(it->second));
      }
    }
    // Each source arc lies on its own path ending in the extension cluster.
    const int home = be.extension_cluster[s];
    if (home < 0 || home >= k) {
      failures.push_back(tag + "extension cluster out of range");
      continue;
    }
    ++home_count[home];
    std::set<Vertex> path_starts;
    for (const Arc& a : source) {
      if (!ps.has_arc(a)) {
        failures.push_back(tag + "does not contain its source arc");
        continue;
      }
      Vertex end = a.head;
      for (int guard = 0; ps.out_degree(end) == 1 && guard <= ps.vertex_count(); ++guard) end = *ps.out(end).begin();
      Vertex start = a.tail;
      for (int guard = 0; ps.in_degree(start) == 1 && guard <= ps.vertex_count(); ++guard) start = *ps.in(start).begin();
      if (q.cluster_of(end) != home) failures.push_back(tag + "a source arc's path ends outside the extension cluster");
      if (!path_starts.insert(start).second) failures.push_back(tag + "two source arcs share a path");
    }
    std::vector<int> per_cluster(k, 0);
    for (Vertex v : ps.support()) {
      const int c = q.cluster_of(v);
      if (c >= 0) ++per_cluster[c];
    }
    for (int i = 0; i < k; ++i) {
      if (per_cluster[i] > cap) {
        failures.push_back(tag + "meets cluster " + std::to_string(i) + " in " +
                           std::to_string(per_cluster[i]) + " vertices");
      }
      if (per_cluster[i] > 0) ++touch_count[i];
    }
  }
  for (int i = 0; i < k; ++i) {
    if (home_count[i] > quota) {
      failures.push_back("cluster " + std::to_string(i) + " is the extension cluster of " +
                         std::to_string(home_count[i]) + " sequences");
    }
    if (touch_count[i] > quota) {
      failures.push_back("cluster " + std::to_string(i) + " is met by " + std::to_string(touch_count[i]) +
                         " sequences");
    }
  }
  return failures;
}

}  // namespace hamdec

#include <algorithm>
#include <cmath>
#include <set>

#include "hamdec/assembly.hpp"
#include "hamdec/classic.hpp"
#include "hamdec/matching.hpp"
#include "hamdec/rng.hpp"
#include "hamdec/superregular.hpp"

namespace hamdec {

namespace {

std::vector<Vertex> without(std::span<const Vertex> base, const std::vector<char>& drop) {
  std::vector<Vertex> out;
  for (Vertex v : base) {
    if (!drop[v]) out.push_back(v);
  }
  return out;
}

// Perfect matching left -> right through arcs of `avail`, or a Hall witness.
std::vector<Arc> match_through(const Digraph& avail, std::span<const Vertex> left,
                               std::span<const Vertex> right) {
  std::vector<int> right_index(avail.vertex_count(), -1);
  for (std::size_t j = 0; j < right.size(); ++j) right_index[right[j]] = static_cast<int>(j);
  std::vector<std::vector<int>> adjacency(left.size());
  for (std::size_t i = 0; i < left.size(); ++i) {
    for (Vertex w : avail.out(left[i])) {
      if (right_index[w] >= 0) adjacency[i].push_back(right_index[w]);
    }
  }
  const auto matching = hopcroft_karp(static_cast<int>(right.size()), adjacency);
  if (matching.size != static_cast<int>(left.size()) || left.size() != right.size()) {
    throw HallViolation("no perfect matching between consecutive clusters",
                        hall_violator(adjacency, matching, left, right));
  }
  std::vector<Arc> arcs;
  for (std::size_t i = 0; i < left.size(); ++i) {
    arcs.push_back({left[i], right[matching.left_to_right[i]]});
  }
  return arcs;
}

Vertex successor(const Digraph& d, Vertex v) { return *d.out(v).begin(); }
Vertex predecessor(const Digraph& d, Vertex v) { return *d.in(v).begin(); }

// u_i and f(u_i): f walks back from u_i to the first vertex of pair.right,
// so the segment f(u_i) .. u_i contains no other pair vertex on its ends.
struct Segments {
  std::vector<Vertex> ends;
  std::vector<Vertex> starts;
};

Segments segments_through(const Digraph& current, const ReservedPair& pair) {
  if (pair.left.size() != pair.right.size()) {
    fail(ErrorKind::MalformedInput, "reservoir pair sides differ in size");
  }
  std::vector<char> in_right(current.vertex_count(), 0);
  for (Vertex v : pair.right) in_right[v] = 1;
  std::vector<char> hit(current.vertex_count(), 0);
  for (Vertex u : pair.left) {
    if (current.out_degree(u) != 1) fail(ErrorKind::MalformedInput, "pair vertex off the cycle");
    const Vertex w = successor(current, u);
    if (!in_right[w] || hit[w]) {
      fail(ErrorKind::MalformedInput,
           "cycle restricted to the pair is not a perfect matching at cluster " +
               std::to_string(pair.cluster));
    }
    hit[w] = 1;
  }
  Segments seg;
  for (Vertex u : pair.left) {
    Vertex v = u;
    while (!in_right[v]) v = predecessor(current, v);
    seg.ends.push_back(u);
    seg.starts.push_back(v);
  }
  return seg;
}

Digraph auxiliary(const Segments& seg, const Digraph& reservoir) {
  const int size = static_cast<int>(seg.ends.size());
  Digraph aux(size);
  for (int i = 0; i < size; ++i) {
    for (int j = 0; j < size; ++j) {
      if (i != j && reservoir.has_arc(seg.ends[i], seg.starts[j])) aux.add_arc(i, j);
    }
  }
  return aux;
}

Digraph rewire(Digraph current, const Segments& seg, const Digraph& aux_cycle) {
  for (Vertex u : seg.ends) current.remove_arc(u, successor(current, u));
  for (const Arc& a : aux_cycle.arcs()) current.add_arc(seg.ends[a.tail], seg.starts[a.head]);
  return current;
}

bool is_one_factor_on(const Digraph& d, std::span<const Vertex> vertices) {
  if (d.arc_count() != static_cast<long long>(vertices.size())) return false;
  for (Vertex v : vertices) {
    if (d.out_degree(v) != 1 || d.in_degree(v) != 1) return false;
  }
  return true;
}

}  // namespace

std::vector<Digraph> extend_to_one_factors(const CyclicSystem& system,
                                           std::span<const Digraph> sequences) {
  const auto& q = system.clusters;
  const int n = system.graph.vertex_count();
  const auto vertices = q.clustered_vertices();
  std::vector<Digraph> factors(sequences.begin(), sequences.end());
  for (const auto& ps : sequences) {
    if (ps.vertex_count() != n) fail(ErrorKind::MalformedInput, "path sequence on wrong vertex range");
  }
  for (int c = 0; c < q.cluster_count(); ++c) {
    const auto& from = q.cluster(c);
    const int to_index = system.cycle.next(c);
    const auto& to = q.cluster(to_index);
    Digraph avail(n);
    for (Vertex u : from) {
      for (Vertex w : system.graph.out(u)) {
        if (q.cluster_of(w) == to_index) avail.add_arc(u, w);
      }
    }
    std::vector<int> untouched;
    for (std::size_t s = 0; s < sequences.size(); ++s) {
      std::vector<char> tails(n, 0), heads(n, 0);
      bool touched = false;
      for (Vertex u : from) {
        if (sequences[s].out_degree(u) > 0) tails[u] = 1, touched = true;
      }
      for (Vertex w : to) {
        if (sequences[s].in_degree(w) > 0) heads[w] = 1, touched = true;
      }
      if (!touched) {
        untouched.push_back(static_cast<int>(s));
        continue;
      }
      const auto left = without(from, tails);
      const auto right = without(to, heads);
      if (left.size() != right.size()) {
        fail(ErrorKind::MalformedInput, "path sequence " + std::to_string(s) +
                                            " is not locally balanced at cluster " +
                                            std::to_string(c));
      }
      for (const Arc& a : match_through(avail, left, right)) {
        avail.remove_arc(a);
        factors[s].add_arc(a);
      }
    }
    if (untouched.empty()) continue;
    const int needed = static_cast<int>(untouched.size());
    std::vector<std::vector<Arc>> matchings;
    try {
      const auto regular = regular_subgraph_exact(avail.underlying(), from, to, needed);
      for (const auto& part : regular_bipartite_to_matchings(regular, from, to)) {
        std::vector<Arc> arcs;
        for (const Edge& e : part.edge_list()) {
          arcs.push_back(q.cluster_of(e.u) == c ? Arc{e.u, e.v} : Arc{e.v, e.u});
        }
        matchings.push_back(std::move(arcs));
      }
    } catch (const CutViolation&) {
      matchings.clear();
      Digraph scratch = avail;
      for (int t = 0; t < needed; ++t) {
        auto arcs = match_through(scratch, from, to);
        for (const Arc& a : arcs) scratch.remove_arc(a);
        matchings.push_back(std::move(arcs));
      }
    }
    for (int t = 0; t < needed; ++t) {
      for (const Arc& a : matchings[t]) {
        if (!avail.remove_arc(a)) fail(ErrorKind::AssemblyVerificationFailed, "matching reused an arc");
        factors[untouched[t]].add_arc(a);
      }
    }
  }
  Digraph used(n);
  for (std::size_t s = 0; s < factors.size(); ++s) {
    if (!is_one_factor_on(factors[s], vertices)) {
      fail(ErrorKind::AssemblyVerificationFailed, "slot " + std::to_string(s) + " is not a 1-factor");
    }
    for (const Arc& a : factors[s].arcs()) {
      if (sequences[s].has_arc(a)) continue;
      if (!system.graph.has_arc(a) || !used.add_arc(a)) {
        fail(ErrorKind::AssemblyVerificationFailed, "completion arcs overlap or leave the system");
      }
    }
  }
  return factors;
}

Digraph merge_to_hamilton(const Digraph& factor, const Digraph& reservoir,
                          std::span<const ReservedPair> pairs, std::uint64_t seed,
                          const SearchBudget& budget) {
  const auto vertices = factor.support();
  auto cycles = cycles_of_one_factor(factor);
  std::vector<char> in_left(factor.vertex_count(), 0);
  for (const auto& pair : pairs) {
    for (Vertex v : pair.left) in_left[v] = 1;
  }
  for (const auto& cyc : cycles) {
    if (std::none_of(cyc.begin(), cyc.end(), [&](Vertex v) { return in_left[v]; })) {
      fail(ErrorKind::MalformedInput, "a cycle of the factor avoids every reservoir pair");
    }
  }
  Digraph current = factor;
  std::size_t count = cycles.size();
  for (int pass = 0; count > 1; ++pass) {
    const std::size_t before = count;
    for (std::size_t p = 0; p < pairs.size() && count > 1; ++p) {
      const auto seg = segments_through(current, pairs[p]);
      if (seg.ends.size() < 2) continue;
      const auto aux = auxiliary(seg, reservoir);
      const auto aux_cycle = find_ordered_hamilton(aux, {}, Rng::derive(seed, pass * 1000 + p), budget);
      current = rewire(std::move(current), seg, aux_cycle);
      count = cycles_of_one_factor(current).size();
    }
    if (count == before) break;
  }
  if (count != 1 || !verify_hamilton_cycle(current, vertices)) {
    fail(ErrorKind::HamiltonSearchExhausted,
         "merging left " + std::to_string(count) + " cycles; the reservoir pairs do not connect them");
  }
  for (const Arc& a : current.arcs()) {
    if (!factor.has_arc(a) && (!in_left[a.tail] || !reservoir.has_arc(a))) {
      fail(ErrorKind::AssemblyVerificationFailed, "merge used an arc outside the reservoir pairs");
    }
  }
  return current;
}

Digraph reorder_for_consistency(const Digraph& cycle, const Digraph& reservoir,
                                const ReservedPair& pair, std::span<const Vertex> waypoints,
                                std::uint64_t seed, const SearchBudget& budget) {
  const auto order = cycle_order(cycle);
  if (order.empty()) fail(ErrorKind::MalformedInput, "reordering needs a Hamilton cycle");
  std::vector<int> index(cycle.vertex_count(), -1);
  for (std::size_t i = 0; i < pair.left.size(); ++i) index[pair.left[i]] = static_cast<int>(i);
  std::vector<Vertex> aux_waypoints;
  for (Vertex x : waypoints) {
    if (x < 0 || x >= cycle.vertex_count() || index[x] < 0) {
      fail(ErrorKind::MalformedInput, "waypoint " + std::to_string(x) + " outside the pair");
    }
    aux_waypoints.push_back(index[x]);
  }
  if (visits_in_order(order, waypoints)) return cycle;
  const auto seg = segments_through(cycle, pair);
  const auto aux = auxiliary(seg, reservoir);
  const auto aux_cycle = find_ordered_hamilton(aux, aux_waypoints, seed, budget);
  Digraph out = rewire(cycle, seg, aux_cycle);
  const auto new_order = cycle_order(out);
  if (new_order.size() != order.size() || !visits_in_order(new_order, waypoints)) {
    fail(ErrorKind::AssemblyVerificationFailed, "reordered cycle lost Hamiltonicity or order");
  }
  return out;
}

SliceAssembly assemble_slice(const CyclicSystem& system, const BalancedExtension& extension,
                             const Digraph& reservoir, std::uint64_t seed,
                             const SearchBudget& budget) {
  const auto& q = system.clusters;
  const int n = system.graph.vertex_count();
  const int k = q.cluster_count();
  const auto vertices = q.clustered_vertices();
  const std::size_t slots = extension.sequences.size();
  if (extension.sources.size() != slots || extension.extension_cluster.size() != slots) {
    fail(ErrorKind::MalformedInput, "balanced extension lists differ in length");
  }
  SliceAssembly out;
  out.factors = extend_to_one_factors(system, extension.sequences);
  Digraph avail = reservoir;

  for (std::size_t s = 0; s < slots; ++s) {
    const Digraph& ps = extension.sequences[s];
    const Digraph& factor = out.factors[s];
    const int home = extension.extension_cluster[s];
    std::vector<char> plus(n, 0), minus(n, 0);
    std::set<int> touched;
    for (Vertex v : ps.support()) {
      if (ps.out_degree(v) > 0) plus[v] = 1;
      if (ps.in_degree(v) > 0) minus[v] = 1;
      if (q.cluster_of(v) >= 0) touched.insert(q.cluster_of(v));
    }
    auto pair_at = [&](int c) {
      return ReservedPair{c, without(q.cluster(c), plus), without(q.cluster(system.cycle.next(c)), minus)};
    };
    auto capacity = [&](const ReservedPair& pair) {
      std::vector<char> right(n, 0);
      for (Vertex v : pair.right) right[v] = 1;
      long long arcs = 0;
      for (Vertex u : pair.left) {
        for (Vertex w : avail.out(u)) arcs += right[w];
      }
      return arcs;
    };

    const auto cycles = cycles_of_one_factor(factor);
    std::vector<int> cycle_of(n, -1);
    for (std::size_t c = 0; c < cycles.size(); ++c) {
      for (Vertex v : cycles[c]) cycle_of[v] = static_cast<int>(c);
    }
    std::vector<ReservedPair> chosen;
    if (cycles.size() > 1) {
      std::vector<int> candidates(touched.begin(), touched.end());
      if (candidates.empty()) {
        candidates.resize(k);
        for (int c = 0; c < k; ++c) candidates[c] = c;
      }
      std::vector<ReservedPair> pairs;
      std::vector<std::set<int>> hits;
      std::vector<long long> room;
      for (int c : candidates) {
        pairs.push_back(pair_at(c));
        std::set<int> h;
        for (Vertex v : pairs.back().left) h.insert(cycle_of[v]);
        hits.push_back(std::move(h));
        room.push_back(capacity(pairs.back()));
      }
      int best = -1;
      for (std::size_t t = 0; t < pairs.size(); ++t) {
        if (hits[t].size() != cycles.size()) continue;
        auto key = [&](std::size_t x) { return std::pair{pairs[x].cluster != home, room[x]}; };
        if (best < 0 || key(t) > key(best)) best = static_cast<int>(t);
      }
      if (best >= 0) {
        chosen.push_back(pairs[best]);
      } else {
        std::set<int> covered;
        std::vector<char> taken(pairs.size(), 0);
        while (covered.size() < cycles.size()) {
          int pick = -1;
          std::size_t gain_best = 0;
          for (std::size_t t = 0; t < pairs.size(); ++t) {
            if (taken[t]) continue;
            std::size_t gain = 0;
            for (int c : hits[t]) gain += !covered.count(c);
            if (gain > gain_best) gain_best = gain, pick = static_cast<int>(t);
          }
          if (pick < 0) break;
          taken[pick] = 1;
          covered.insert(hits[pick].begin(), hits[pick].end());
          chosen.push_back(pairs[pick]);
        }
      }
    }
    const std::uint64_t slot_seed = Rng::derive(seed, s);
    Digraph merged = chosen.empty() ? factor : merge_to_hamilton(factor, avail, chosen, slot_seed, budget);

    const auto& sources = extension.sources[s];
    Digraph cycle = merged;
    if (!sources.empty() && !is_consistent_with(merged, sources)) {
      std::vector<Vertex> waypoints;
      for (const Arc& a : sources) {
        Vertex v = a.head;
        while (ps.out_degree(v) > 0) v = successor(ps, v);
        waypoints.push_back(v);
      }
      Digraph after_merge = avail;
      for (const Arc& a : merged.arcs()) {
        if (!factor.has_arc(a)) after_merge.remove_arc(a);
      }
      cycle = reorder_for_consistency(merged, after_merge, pair_at(home), waypoints,
                                      Rng::derive(slot_seed, 0xc0ffee), budget);
      chosen.push_back(pair_at(home));
    }

    std::vector<int> used_clusters;
    for (const auto& pair : chosen) used_clusters.push_back(pair.cluster);
    std::vector<char> allowed(k, 0);
    for (int c : used_clusters) allowed[c] = 1;
    if (!verify_hamilton_cycle(cycle, vertices)) {
      fail(ErrorKind::AssemblyVerificationFailed, "slot " + std::to_string(s) + " is not Hamiltonian");
    }
    for (const Arc& a : ps.arcs()) {
      if (!cycle.has_arc(a)) fail(ErrorKind::AssemblyVerificationFailed, "cycle dropped a sequence arc");
    }
    if (!sources.empty() && !is_consistent_with(cycle, sources)) {
      fail(ErrorKind::AssemblyVerificationFailed, "cycle not consistent with its matching");
    }
    for (const Arc& a : cycle.arcs()) {
      if (factor.has_arc(a)) continue;
      if (!allowed[q.cluster_of(a.tail)] || !avail.remove_arc(a)) {
        fail(ErrorKind::AssemblyVerificationFailed, "slot " + std::to_string(s) +
                                                        " used a reservoir arc twice or off its pairs");
      }
    }
    out.cycles.push_back(std::move(cycle));
    out.merge_clusters.push_back(std::move(used_clusters));
  }
  out.reservoir_left = std::move(avail);
  return out;
}

SliceAssembly merge_slice(const CyclicSystem& system, const BalancedExtension& extension,
                          double gamma, std::uint64_t seed, const SearchBudget& budget) {
  const auto& q = system.clusters;
  const int n = system.graph.vertex_count();
  Digraph reservoir(n);
  for (int c = 0; c < q.cluster_count(); ++c) {
    const auto& from = q.cluster(c);
    const int to_index = system.cycle.next(c);
    const auto& to = q.cluster(to_index);
    Multigraph pair(n);
    for (Vertex u : from) {
      for (Vertex w : system.graph.out(u)) {
        if (q.cluster_of(w) == to_index) pair.add_edge(u, w);
      }
    }
    int min_degree = pair.degree(from.front());
    for (Vertex v : from) min_degree = std::min(min_degree, pair.degree(v));
    for (Vertex v : to) min_degree = std::min(min_degree, pair.degree(v));
    const int degree = static_cast<int>(std::lround(2.0 * gamma * min_degree));
    if (degree == 0) continue;
    const auto chosen = reserve_regular(pair, from, to, degree, Rng::derive(seed, c));
    for (const Edge& e : chosen.edge_list()) {
      reservoir.add_arc(q.cluster_of(e.u) == c ? Arc{e.u, e.v} : Arc{e.v, e.u});
    }
  }
  CyclicSystem rest = system;
  rest.graph -= reservoir;
  return assemble_slice(rest, extension, reservoir, Rng::derive(seed, 0x5eed), budget);
}

}  // namespace hamdec

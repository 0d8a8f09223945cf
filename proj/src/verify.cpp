#include <numeric>

#include "hamdec/verify.hpp"

namespace hamdec {

namespace {

// Every vertex of degree 2 and every component an even cycle.
bool is_two_perfect_matchings(const Multigraph& h) {
  const int n = h.vertex_count();
  for (Vertex v = 0; v < n; ++v) {
    if (h.degree(v) != 2) return false;
  }
  std::vector<int> colour(n, -1);
  for (Vertex s = 0; s < n; ++s) {
    if (colour[s] >= 0) continue;
    colour[s] = 0;
    std::vector<Vertex> stack{s};
    while (!stack.empty()) {
      const Vertex v = stack.back();
      stack.pop_back();
      for (const auto& [w, mult] : h.neighbours(v)) {
        (void)mult;
        if (colour[w] < 0) {
          colour[w] = 1 - colour[v];
          stack.push_back(w);
        } else if (colour[w] == colour[v]) {
          return false;
        }
      }
    }
  }
  return true;
}

}  // namespace

VerificationReport verify_certificate(const Multigraph& g, const ClusterPartition& p,
                                      std::span<const ExceptionalSystem> systems,
                                      const Certificate& certificate) {
  VerificationReport report;
  const int n = g.vertex_count();
  auto flag = [&](std::string why) { report.failures.push_back(std::move(why)); };
  if (certificate.schema != 1) flag("unsupported schema " + std::to_string(certificate.schema));
  if (certificate.mode != p.mode()) flag("certificate mode differs from the partition");
  if (certificate.slots.size() != systems.size()) {
    flag("certificate has " + std::to_string(certificate.slots.size()) + " slots for " +
         std::to_string(systems.size()) + " systems");
  }
  std::vector<Vertex> all(n);
  std::iota(all.begin(), all.end(), 0);
  std::vector<char> seen(systems.size(), 0);
  Multigraph union_all(n);
  long long extra_edges = 0;
  bool edges_in_range = true;
  for (const auto& slot : certificate.slots) {
    SlotVerdict verdict;
    verdict.system = slot.system;
    const std::string tag = "slot for system " + std::to_string(slot.system) + ": ";
    if (slot.system < 0 || slot.system >= static_cast<int>(systems.size())) {
      flag(tag + "system index out of range");
      report.slots.push_back(verdict);
      continue;
    }
    if (seen[slot.system]) flag(tag + "system used twice");
    seen[slot.system] = 1;
    const auto& system = systems[slot.system];
    if (slot.kind != system.kind) flag(tag + "kind differs from the system");
    Multigraph h(n);
    bool in_range = true;
    for (const Edge& e : slot.edges) {
      if (e.u < 0 || e.v >= n || e.u == e.v) {
        in_range = false;
        continue;
      }
      h.add_edge(e.u, e.v);
    }
    if (!in_range) {
      flag(tag + "edge out of range");
      edges_in_range = false;
    }
    const Multigraph j = system.graph(n);
    verdict.contains_system = h.contains(j);
    verdict.inside_graph = g.contains(h);
    if (system.kind == SystemKind::MES) {
      verdict.structure_ok = is_two_perfect_matchings(h);
    } else {
      verdict.structure_ok = verify_hamilton_cycle(h, all);
    }
    if (!verdict.contains_system) flag(tag + "does not contain its exceptional system");
    if (!verdict.inside_graph) flag(tag + "uses edges outside the graph");
    if (!verdict.structure_ok) {
      flag(tag + (system.kind == SystemKind::MES ? "is not two edge-disjoint perfect matchings"
                                                 : "is not a Hamilton cycle"));
    }
    union_all += h;
    extra_edges += h.edge_count() - j.edge_count();
    report.slots.push_back(verdict);
  }
  for (std::size_t s = 0; s < systems.size(); ++s) {
    if (!seen[s]) flag("system " + std::to_string(s) + " has no slot");
  }
  report.disjoint = edges_in_range && g.contains(union_all);
  if (!report.disjoint) flag("slots are not pairwise edge-disjoint inside the graph");

  long long bound = 0;
  if (p.mode() == PartitionMode::Bipartite) {
    bound = g.between(p.a_vertices(), p.b_vertices()).edge_count();
  } else {
    bound = g.induced(p.a_vertices()).edge_count() + g.induced(p.b_vertices()).edge_count();
  }
  report.coverage = bound > 0 ? static_cast<double>(extra_edges) / static_cast<double>(bound) : 0.0;
  report.ok = report.failures.empty();
  return report;
}

}  // namespace hamdec

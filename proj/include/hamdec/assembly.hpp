#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hamdec/cyclic.hpp"
#include "hamdec/extension.hpp"
#include "hamdec/hamilton_search.hpp"

namespace hamdec {

// Reservoir pair between `left` (inside cluster) and `right` (inside the
// next cluster on the cycle).
struct ReservedPair {
  int cluster = 0;
  std::vector<Vertex> left;
  std::vector<Vertex> right;
};

// One 1-factor per path sequence: PS_s plus perfect matchings between
// consecutive clusters that avoid the sequence's tails and heads. The
// matchings across all slots are edge-disjoint arcs of system.graph.
std::vector<Digraph> extend_to_one_factors(const CyclicSystem& system,
                                           std::span<const Digraph> sequences);

// Joins the cycles of `factor` into one by replacing, pair by pair, the
// matching factor[left, right] with a perfect matching of reservoir arcs.
Digraph merge_to_hamilton(const Digraph& factor, const Digraph& reservoir,
                          std::span<const ReservedPair> pairs, std::uint64_t seed,
                          const SearchBudget& budget = {});

// Re-routes the matching cycle[left, right] through reservoir arcs so the
// cycle meets `waypoints` (all inside pair.left) in order.
Digraph reorder_for_consistency(const Digraph& cycle, const Digraph& reservoir,
                                const ReservedPair& pair, std::span<const Vertex> waypoints,
                                std::uint64_t seed, const SearchBudget& budget = {});

struct SliceAssembly {
  std::vector<Digraph> cycles;                   // C_s
  std::vector<Digraph> factors;                  // F_s
  std::vector<std::vector<int>> merge_clusters;  // pairs used per slot
  Digraph reservoir_left;                        // H minus every C_s - F_s
};

// Hamilton cycles C_s containing PS_s and consistent with M_s, with the
// C_s - F_s edge-disjoint inside `reservoir`.
SliceAssembly assemble_slice(const CyclicSystem& system, const BalancedExtension& extension,
                             const Digraph& reservoir, std::uint64_t seed,
                             const SearchBudget& budget = {});

// Sets aside a regular reservoir of degree round(2 gamma * min degree) in
// every consecutive cluster pair, then assembles on the remainder.
SliceAssembly merge_slice(const CyclicSystem& system, const BalancedExtension& extension,
                          double gamma, std::uint64_t seed, const SearchBudget& budget = {});

}  // namespace hamdec

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hamdec/graph.hpp"

namespace hamdec {

struct SearchBudget {
  int restarts = 50;
  int steps_per_vertex = 10;
};

// True iff the cyclic sequence `order` meets `waypoints` in the given
// cyclic order (every waypoint must occur).
bool visits_in_order(std::span<const Vertex> order, std::span<const Vertex> waypoints);

// Directed Hamilton cycle through all vertices 0..n-1 of `d` that visits
// `waypoints` in cyclic order. Randomized; the answer is verified before it
// is returned. Throws HamiltonSearchExhausted when the budget runs out.
Digraph find_ordered_hamilton(const Digraph& d, std::span<const Vertex> waypoints,
                              std::uint64_t seed, const SearchBudget& budget = {});

}  // namespace hamdec

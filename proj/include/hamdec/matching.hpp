#pragma once

#include <span>
#include <vector>

#include "hamdec/error.hpp"

namespace hamdec {

struct BipartiteMatching {
  std::vector<int> left_to_right;  // -1 when unmatched
  std::vector<int> right_to_left;
  int size = 0;
};

// Hopcroft-Karp over local indices: adjacency[l] lists right indices.
BipartiteMatching hopcroft_karp(int right_count, const std::vector<std::vector<int>>& adjacency);

// Alternating-reachability set from an unmatched left vertex of a maximum
// matching, translated to global ids. Empty witness if the matching is
// left-perfect.
HallWitness hall_violator(const std::vector<std::vector<int>>& adjacency,
                          const BipartiteMatching& matching,
                          std::span<const Vertex> left_ids,
                          std::span<const Vertex> right_ids);

}  // namespace hamdec

#include "hamdec/matching.hpp"

#include <algorithm>
#include <deque>
#include <limits>

namespace hamdec {

namespace {

constexpr int kUnreached = std::numeric_limits<int>::max();

class HopcroftKarp {
 public:
  HopcroftKarp(int right_count, const std::vector<std::vector<int>>& adjacency)
      : adj_(adjacency),
        left_(static_cast<int>(adjacency.size()), -1),
        right_(right_count, -1),
        dist_(adjacency.size()),
        cursor_(adjacency.size()) {}

  BipartiteMatching run() {
    int size = 0;
    while (layer()) {
      std::fill(cursor_.begin(), cursor_.end(), 0);
      for (int l = 0; l < static_cast<int>(adj_.size()); ++l) {
        if (left_[l] == -1 && augment(l)) ++size;
      }
    }
    return {left_, right_, size};
  }

 private:
  bool layer() {
    std::deque<int> queue;
    for (int l = 0; l < static_cast<int>(adj_.size()); ++l) {
      if (left_[l] == -1) {
        dist_[l] = 0;
        queue.push_back(l);
      } else {
        dist_[l] = kUnreached;
      }
    }
    bool found = false;
    while (!queue.empty()) {
      const int l = queue.front();
      queue.pop_front();
      for (int r : adj_[l]) {
        const int next = right_[r];
        if (next == -1) {
          found = true;
        } else if (dist_[next] == kUnreached) {
          dist_[next] = dist_[l] + 1;
          queue.push_back(next);
        }
      }
    }
    return found;
  }

  // Iterative DFS along the layered graph.
  bool augment(int root) {
    std::vector<int> stack{root};
    while (!stack.empty()) {
      const int l = stack.back();
      bool advanced = false;
      while (cursor_[l] < static_cast<int>(adj_[l].size())) {
        const int r = adj_[l][cursor_[l]];
        const int next = right_[r];
        if (next == -1) {
          // Flip the path recorded on the stack.
          int free_right = r;
          for (auto it = stack.rbegin(); it != stack.rend(); ++it) {
            const int cur = *it;
            const int prev_right = left_[cur];
            left_[cur] = free_right;
            right_[free_right] = cur;
            free_right = prev_right;
          }
          return true;
        }
        if (dist_[next] == dist_[l] + 1) {
          stack.push_back(next);
          advanced = true;
          break;
        }
        ++cursor_[l];
      }
      if (!advanced) {
        dist_[l] = kUnreached;
        stack.pop_back();
        if (!stack.empty()) ++cursor_[stack.back()];
      }
    }
    return false;
  }

  const std::vector<std::vector<int>>& adj_;
  std::vector<int> left_;
  std::vector<int> right_;
  std::vector<int> dist_;
  std::vector<int> cursor_;
};

}  // namespace

BipartiteMatching hopcroft_karp(int right_count, const std::vector<std::vector<int>>& adjacency) {
  return HopcroftKarp(right_count, adjacency).run();
}

HallWitness hall_violator(const std::vector<std::vector<int>>& adjacency,
                          const BipartiteMatching& matching,
                          std::span<const Vertex> left_ids,
                          std::span<const Vertex> right_ids) {
  HallWitness witness;
  const int left_count = static_cast<int>(adjacency.size());
  int root = -1;
  for (int l = 0; l < left_count; ++l) {
    if (matching.left_to_right[l] == -1) {
      root = l;
      break;
    }
  }
  if (root == -1) return witness;
  std::vector<char> seen_left(left_count, 0);
  std::vector<char> seen_right(matching.right_to_left.size(), 0);
  std::deque<int> queue{root};
  seen_left[root] = 1;
  while (!queue.empty()) {
    const int l = queue.front();
    queue.pop_front();
    for (int r : adjacency[l]) {
      if (seen_right[r]) continue;
      seen_right[r] = 1;
      const int next = matching.right_to_left[r];
      if (next != -1 && !seen_left[next]) {
        seen_left[next] = 1;
        queue.push_back(next);
      }
    }
  }
  for (int l = 0; l < left_count; ++l) {
    if (seen_left[l]) witness.deficient.push_back(left_ids[l]);
  }
  for (std::size_t r = 0; r < seen_right.size(); ++r) {
    if (seen_right[r]) witness.neighbourhood.push_back(right_ids[r]);
  }
  return witness;
}

}  // namespace hamdec

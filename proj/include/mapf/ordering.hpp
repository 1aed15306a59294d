#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "mapf/errors.hpp"

namespace mapf {

// Strict partial order over agent indices, kept transitively closed in a
// bit-matrix so `precedes` is O(1). Agent counts are small enough that the
// O(M^2 / 64) row unions on add are cheap.
class PriorityOrdering {
 public:
  PriorityOrdering() = default;
  explicit PriorityOrdering(int num_agents);

  int num_agents() const { return m_; }

  // True iff i has higher priority than j (i precedes j) under closure.
  bool precedes(int i, int j) const;
  bool comparable(int i, int j) const { return precedes(i, j) || precedes(j, i); }

  // Adds lo < hi (lo gets higher priority) and closes transitively.
  // Throws CycleError if hi already precedes lo or lo == hi.
  void add(int lo, int hi);

  // Explicitly added pairs, in insertion order (not the closure).
  const std::vector<std::pair<int, int>>& pairs() const { return pairs_; }

  // Topological order of {i} + {j : i precedes j}, ties broken by
  // ascending agent index.
  std::vector<int> topo_below(int i) const;

  // True iff `a` preserves every ordered pair of `b` (under closure).
  static bool extends(const PriorityOrdering& a, const PriorityOrdering& b);

 private:
  int m_ = 0;
  int words_ = 0;
  std::vector<std::pair<int, int>> pairs_;
  std::vector<uint64_t> reach_;  // m_ rows of `words_` words; bit j of row i = i precedes j

  bool bit(int i, int j) const { return (reach_[i * words_ + j / 64] >> (j % 64)) & 1; }
  void set_bit(int i, int j) { reach_[i * words_ + j / 64] |= uint64_t{1} << (j % 64); }
};

// Value-semantics convenience used throughout the solvers.
inline PriorityOrdering ordering_add(const PriorityOrdering& o, int lo, int hi) {
  PriorityOrdering copy = o;
  copy.add(lo, hi);
  return copy;
}

}  // namespace mapf

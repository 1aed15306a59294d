#pragma once

#include <cstdint>

#include "mapf/lowlevel.hpp"
#include "mapf/stats.hpp"

namespace mapf {

// Depth-first search over the priority tree. With a total initial ordering
// this degenerates to standard prioritized planning: the root either
// resolves everything or fails, and no splits ever happen.
SolveOutcome solve_pbs(const Instance& instance, const PriorityOrdering& initial_ordering,
                       double timeout_seconds, const SearchBudget& budget = SearchBudget{});

enum class OrderingStrategyKind { Fixed, LongestFirst, ShortestFirst, RandomSeeded };

struct OrderingStrategy {
  OrderingStrategyKind kind = OrderingStrategyKind::Fixed;
  std::vector<int> fixed_order;  // permutation of agent indices, highest priority first
  uint64_t seed = 0;
};

// Total order per the strategy; ties broken by ascending agent index.
PriorityOrdering build_total_ordering(const Instance& instance, const OrderingStrategy& strategy);

// Runs PBS with `runs` random total initial orderings (sub-seeds derived
// from `seed`), each under its own timeout, and keeps the cheapest solution.
SolveOutcome solve_rnd(const Instance& instance, int runs, double per_run_timeout, uint64_t seed,
                       const SearchBudget& budget = SearchBudget{});

}  // namespace mapf

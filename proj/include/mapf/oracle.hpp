#pragma once

#include <optional>
#include <vector>

#include "mapf/collision.hpp"
#include "mapf/ordering.hpp"
#include "mapf/plan.hpp"

namespace mapf {

// Independent ground truth for the test suites; the solvers never call
// anything in here.

// Flowtime-optimal joint-state uniform-cost search. Intended for tiny
// instances (<= ~4 agents, ~30 vertices). cost_cap < 0 uses the default
// 4 * sum(individually optimal lengths) + 4M; exceeding it returns nullopt.
std::optional<Plan> joint_optimal(const Instance& instance, long long cost_cap = -1);

struct OrderingOutcome {
  std::vector<int> order;  // highest priority first, 0-based
  bool solved = false;
  long long flowtime = -1;
};

// Runs sequential prioritized planning for every total ordering.
// Throws RefusedTooLarge when the instance has more than max_m agents.
std::vector<OrderingOutcome> enumerate_total_orderings(const Instance& instance, int max_m = 5,
                                                       double per_run_timeout = 10.0);

// True iff every agent can reach its target avoiding all other agents'
// starts and targets.
bool wellformed_check(const Instance& instance);

// True iff no agent's arrival time improves when replanned against only
// the paths of its strictly-higher agents.
bool is_consistent(const Instance& instance, const Plan& plan, const PriorityOrdering& ordering);

}  // namespace mapf

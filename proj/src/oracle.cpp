#include "mapf/oracle.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <numeric>
#include <queue>
#include <unordered_map>
#include <vector>

#include "mapf/lowlevel.hpp"
#include "mapf/pbs.hpp"

namespace mapf {

namespace {

// Joint states pack (position, done) per agent into a 64-bit key.
struct JointState {
  std::vector<VertexId> pos;
  uint32_t done = 0;  // bitmask

  uint64_t key(int bits_per_agent) const {
    uint64_t k = 0;
    for (size_t i = 0; i < pos.size(); ++i) {
      uint64_t field = (static_cast<uint64_t>(pos[i]) << 1) | ((done >> i) & 1);
      k |= field << (bits_per_agent * i);
    }
    return k;
  }
};

struct StoredState {
  JointState state;
  long long cost = 0;
  int parent = -1;
};

}  // namespace

std::optional<Plan> joint_optimal(const Instance& instance, long long cost_cap) {
  const int m = instance.num_agents();
  const Graph& graph = instance.graph;
  const bool stay = instance.semantics == Semantics::StayAtTarget;

  if (m == 0) return Plan{};
  int bits = 1;
  while ((1 << bits) < graph.vertex_count()) ++bits;
  bits += 1;  // done flag
  if (bits * m > 64) throw RefusedTooLarge("instance too large for the joint oracle");

  if (cost_cap < 0) {
    long long sum = 0;
    for (const Agent& a : instance.agents)
      sum += individually_optimal_path(graph, a).arrival();
    cost_cap = 4 * sum + 4 * m;
  }

  std::vector<StoredState> pool;
  std::unordered_map<uint64_t, long long> best;  // key -> best cost seen
  using QueueEntry = std::pair<long long, int>;  // (cost, pool index)
  std::priority_queue<QueueEntry, std::vector<QueueEntry>, std::greater<>> open;

  auto push = [&](JointState state, long long cost, int parent) {
    if (cost > cost_cap) return;
    uint64_t k = state.key(bits);
    auto it = best.find(k);
    if (it != best.end() && it->second <= cost) return;
    best[k] = cost;
    pool.push_back({std::move(state), cost, parent});
    open.push({cost, static_cast<int>(pool.size()) - 1});
  };

  // Initial states: agents already standing on their targets may stop at
  // t = 0 (forced under disappear semantics).
  {
    std::vector<int> at_target;
    for (int i = 0; i < m; ++i)
      if (instance.agents[i].start == instance.agents[i].target) at_target.push_back(i);
    JointState init;
    for (int i = 0; i < m; ++i) init.pos.push_back(instance.agents[i].start);
    if (!stay) {
      for (int i : at_target) init.done |= 1u << i;
      push(std::move(init), 0, -1);
    } else {
      for (uint32_t sub = 0; sub < (1u << at_target.size()); ++sub) {
        JointState s = init;
        for (size_t b = 0; b < at_target.size(); ++b)
          if ((sub >> b) & 1) s.done |= 1u << at_target[b];
        push(std::move(s), 0, -1);
      }
    }
  }

  const uint32_t all_done = m == 32 ? ~0u : (1u << m) - 1;
  int goal_index = -1;

  while (!open.empty() && goal_index < 0) {
    auto [cost, index] = open.top();
    open.pop();
    JointState current = pool[index].state;  // copy; pool may reallocate below
    if (cost > best[current.key(bits)]) continue;
    if (current.done == all_done) {
      goal_index = index;
      break;
    }

    std::vector<int> active;
    for (int i = 0; i < m; ++i)
      if (!((current.done >> i) & 1)) active.push_back(i);
    long long step_cost = static_cast<long long>(active.size());

    // Enumerate all joint moves of the active agents recursively.
    JointState next = current;
    std::vector<VertexId> old_pos = current.pos;
    std::function<void(size_t)> recurse = [&](size_t idx) {
      if (idx == active.size()) {
        // Collision checks over occupying agents; under disappear
        // semantics, agents done before this step occupy nothing.
        for (int i = 0; i < m; ++i) {
          if (!stay && ((current.done >> i) & 1)) continue;
          for (int j = i + 1; j < m; ++j) {
            if (!stay && ((current.done >> j) & 1)) continue;
            if (next.pos[i] == next.pos[j]) return;  // vertex collision
            if (next.pos[i] == old_pos[j] && next.pos[j] == old_pos[i] &&
                next.pos[i] != old_pos[i])
              return;  // edge collision
          }
        }
        push(next, cost + step_cost, index);
        return;
      }
      int agent = active[idx];
      auto try_move = [&](VertexId nv) {
        next.pos[agent] = nv;
        if (nv == instance.agents[agent].target) {
          if (stay) {
            next.done &= ~(1u << agent);
            recurse(idx + 1);  // keep moving later
            next.done |= 1u << agent;
            recurse(idx + 1);  // stop here
            next.done &= ~(1u << agent);
          } else {
            next.done |= 1u << agent;  // first visit: forced stop
            recurse(idx + 1);
            next.done &= ~(1u << agent);
          }
        } else {
          recurse(idx + 1);
        }
      };
      try_move(old_pos[agent]);  // wait
      for (VertexId nv : graph.neighbors(old_pos[agent])) try_move(nv);
      next.pos[agent] = old_pos[agent];
    };
    recurse(0);
  }

  if (goal_index < 0) return std::nullopt;

  // Reconstruct the chain of joint states, then cut each agent's path at
  // the step where it stopped.
  std::vector<const StoredState*> chain;
  for (int idx = goal_index; idx >= 0; idx = pool[idx].parent) chain.push_back(&pool[idx]);
  std::reverse(chain.begin(), chain.end());

  Plan plan(m);
  for (int i = 0; i < m; ++i) {
    for (const StoredState* s : chain) {
      plan[i].vertices.push_back(s->state.pos[i]);
      if ((s->state.done >> i) & 1) break;
    }
  }
  return plan;
}

std::vector<OrderingOutcome> enumerate_total_orderings(const Instance& instance, int max_m,
                                                       double per_run_timeout) {
  const int m = instance.num_agents();
  if (m > max_m)
    throw RefusedTooLarge("refusing to enumerate " + std::to_string(m) + "! orderings");

  std::vector<int> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<OrderingOutcome> table;
  do {
    PriorityOrdering ordering(m);
    for (int k = 0; k + 1 < m; ++k) ordering.add(perm[k], perm[k + 1]);
    SolveOutcome out = solve_pbs(instance, ordering, per_run_timeout);
    OrderingOutcome row;
    row.order = perm;
    row.solved = out.result == SolveResult::Solved;
    if (row.solved) row.flowtime = flowtime(*out.plan);
    table.push_back(std::move(row));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return table;
}

bool wellformed_check(const Instance& instance) {
  const int m = instance.num_agents();
  for (int i = 0; i < m; ++i) {
    std::vector<char> blocked(instance.graph.vertex_count(), 0);
    for (int j = 0; j < m; ++j) {
      if (j == i) continue;
      blocked[instance.agents[j].start] = 1;
      blocked[instance.agents[j].target] = 1;
    }
    if (blocked[instance.agents[i].start] || blocked[instance.agents[i].target]) return false;
    auto dist = instance.graph.bfs_distances(instance.agents[i].start, &blocked);
    if (dist[instance.agents[i].target] < 0) return false;
  }
  return true;
}

bool is_consistent(const Instance& instance, const Plan& plan, const PriorityOrdering& ordering) {
  const int m = instance.num_agents();
  for (int i = 0; i < m; ++i) {
    std::vector<const Path*> higher;
    for (int k = 0; k < m; ++k)
      if (ordering.precedes(k, i)) higher.push_back(&plan[k]);
    auto best = prioritized_shortest_path(instance.graph, instance.agents[i], higher,
                                          instance.semantics, TieBreakContext{});
    if (!best) return false;
    if (best->arrival() != plan[i].arrival()) return false;
  }
  return true;
}

}  // namespace mapf

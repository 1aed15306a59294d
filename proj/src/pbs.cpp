#include "mapf/pbs.hpp"

#include <algorithm>
#include <cassert>
#include <memory>
#include <numeric>
#include <vector>

#include "mapf/rng.hpp"

namespace mapf {

namespace {

struct PtNode {
  Plan plan;
  PriorityOrdering ordering;
  long long cost = 0;
  int pairs_added = 0;  // along the branch from the root
};

class PbsSolver {
 public:
  PbsSolver(const Instance& instance, const PriorityOrdering& initial, double timeout,
            const SearchBudget& budget)
      : instance_(instance), initial_(initial), deadline_(timeout), budget_(budget) {}

  SolveOutcome run() {
    Stopwatch watch;
    SolveOutcome out;
    try {
      out = search();
    } catch (const TimeoutError&) {
      out.result = SolveResult::Timeout;
    }
    out.stats = stats_;
    out.stats.result = out.result;
    out.stats.runtime_seconds = watch.seconds();
    return out;
  }

 private:
  const Instance& instance_;
  PriorityOrdering initial_;
  Deadline deadline_;
  SearchBudget budget_;
  SolverStats stats_;

  // Replans agent i and, in topological priority order, every agent below
  // it whose path now collides with a higher-priority one. Agents whose
  // higher paths changed without a collision are probe-replanned and keep
  // their old path unless the new one strictly improves their arrival;
  // this keeps every path arrival-optimal against its current higher set,
  // so returned plans are always consistent with the final ordering.
  bool update_plan(PtNode& node, int i) {
    const int m = instance_.num_agents();
    std::vector<char> changed(m, 0);
    for (int j : node.ordering.topo_below(i)) {
      bool replan = (j == i);
      bool probe = false;
      if (!replan && node.plan[j].empty()) continue;  // not yet planned (root build)
      if (!replan) {
        for (int k = 0; k < m && !replan; ++k) {
          if (!node.ordering.precedes(k, j) || node.plan[k].empty()) continue;
          if (paths_collide(node.plan[k], node.plan[j], instance_.semantics))
            replan = true;
          else if (changed[k])
            probe = true;
        }
      }
      if (!replan && !probe) continue;

      std::vector<const Path*> higher;
      TieBreakContext ctx;
      for (int k = 0; k < m; ++k) {
        if (k == j || node.plan[k].empty()) continue;
        if (node.ordering.precedes(k, j))
          higher.push_back(&node.plan[k]);
        else if (node.ordering.precedes(j, k))
          ctx.lower.push_back(&node.plan[k]);
        else
          ctx.incomparable.push_back(&node.plan[k]);
      }
      auto path = prioritized_shortest_path(instance_.graph, instance_.agents[j], higher,
                                            instance_.semantics, ctx, &stats_, budget_,
                                            deadline_);
      if (!path) {
        if (replan) return false;
        continue;  // probe only; the old collision-free path stands
      }
      if (!replan && path->arrival() >= node.plan[j].arrival()) continue;  // path stability
      node.plan[j] = std::move(*path);
      changed[j] = 1;
    }
    return true;
  }

  SolveOutcome search() {
    const int m = instance_.num_agents();
    const int max_pairs = m * (m - 1) / 2;

    auto root = std::make_unique<PtNode>();
    root->plan.assign(m, Path{});
    root->ordering = initial_;
    for (int i = 0; i < m; ++i) {
      if (deadline_.expired()) throw TimeoutError();
      if (!update_plan(*root, i))
        return {SolveResult::NoSolution, std::nullopt, std::nullopt, {}};
    }
    root->cost = flowtime(root->plan);

    std::vector<std::unique_ptr<PtNode>> stack;
    stack.push_back(std::move(root));

    while (!stack.empty()) {
      if (deadline_.expired()) throw TimeoutError();
      std::unique_ptr<PtNode> node = std::move(stack.back());
      stack.pop_back();
      ++stats_.high_level_expansions;
      stats_.max_branch_pairs = std::max(stats_.max_branch_pairs, node->pairs_added);

      auto collision = first_collision(instance_, node->plan);
      if (!collision) {
        SolveOutcome out;
        out.result = SolveResult::Solved;
        out.plan = std::move(node->plan);
        out.final_ordering = std::move(node->ordering);
        return out;
      }

      // The PT invariant guarantees collided agents are incomparable.
      assert(!node->ordering.comparable(collision->agent_a, collision->agent_b));

      auto make_child = [&](int constrained, int other) -> std::unique_ptr<PtNode> {
        if (node->ordering.precedes(other, constrained)) {
          stats_.duplicate_pair_added = true;  // would re-add an implied pair
          return nullptr;
        }
        auto child = std::make_unique<PtNode>();
        child->plan = node->plan;
        child->ordering = ordering_add(node->ordering, other, constrained);
        child->pairs_added = node->pairs_added + 1;
        assert(child->pairs_added <= max_pairs);
        if (!update_plan(*child, constrained)) return nullptr;
        child->cost = flowtime(child->plan);
        return child;
      };

      auto first = make_child(collision->agent_a, collision->agent_b);
      auto second = make_child(collision->agent_b, collision->agent_a);

      // Push in non-increasing cost order so the cheaper child is explored
      // first; ties favor the child constraining the first-listed agent.
      if (first && second) {
        if (second->cost > first->cost) {
          stack.push_back(std::move(second));
          stack.push_back(std::move(first));
        } else if (first->cost > second->cost) {
          stack.push_back(std::move(first));
          stack.push_back(std::move(second));
        } else {
          stack.push_back(std::move(second));
          stack.push_back(std::move(first));
        }
      } else if (first) {
        stack.push_back(std::move(first));
      } else if (second) {
        stack.push_back(std::move(second));
      }
    }
    return {SolveResult::NoSolution, std::nullopt, std::nullopt, {}};
  }
};

}  // namespace

SolveOutcome solve_pbs(const Instance& instance, const PriorityOrdering& initial_ordering,
                       double timeout_seconds, const SearchBudget& budget) {
  PbsSolver solver(instance, initial_ordering, timeout_seconds, budget);
  return solver.run();
}

PriorityOrdering build_total_ordering(const Instance& instance, const OrderingStrategy& strategy) {
  const int m = instance.num_agents();
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);

  switch (strategy.kind) {
    case OrderingStrategyKind::Fixed:
      if (!strategy.fixed_order.empty()) {
        if (static_cast<int>(strategy.fixed_order.size()) != m)
          throw Error("fixed order must be a permutation of all agents");
        order = strategy.fixed_order;
      }
      break;
    case OrderingStrategyKind::LongestFirst:
    case OrderingStrategyKind::ShortestFirst: {
      std::vector<int> length(m);
      for (int i = 0; i < m; ++i)
        length[i] = individually_optimal_path(instance.graph, instance.agents[i]).arrival();
      bool longest = strategy.kind == OrderingStrategyKind::LongestFirst;
      std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return longest ? length[a] > length[b] : length[a] < length[b];
      });
      break;
    }
    case OrderingStrategyKind::RandomSeeded: {
      SplitMix64 rng(strategy.seed);
      rng.shuffle(order);
      break;
    }
  }

  PriorityOrdering ordering(m);
  for (int k = 0; k + 1 < m; ++k) ordering.add(order[k], order[k + 1]);
  return ordering;
}

SolveOutcome solve_rnd(const Instance& instance, int runs, double per_run_timeout, uint64_t seed,
                       const SearchBudget& budget) {
  Stopwatch watch;
  SolveOutcome best;
  best.result = SolveResult::NoSolution;
  for (int r = 0; r < runs; ++r) {
    OrderingStrategy strategy;
    strategy.kind = OrderingStrategyKind::RandomSeeded;
    strategy.seed = derive_seed(seed, static_cast<uint64_t>(r));
    auto ordering = build_total_ordering(instance, strategy);
    SolveOutcome run = solve_pbs(instance, ordering, per_run_timeout, budget);
    best.stats.high_level_expansions += run.stats.high_level_expansions;
    best.stats.low_level_expansions += run.stats.low_level_expansions;
    best.stats.max_branch_pairs =
        std::max(best.stats.max_branch_pairs, run.stats.max_branch_pairs);
    best.stats.duplicate_pair_added |= run.stats.duplicate_pair_added;
    if (run.result == SolveResult::Solved) {
      long long cost = flowtime(*run.plan);
      if (best.result != SolveResult::Solved || cost < flowtime(*best.plan)) {
        best.result = SolveResult::Solved;
        best.plan = std::move(run.plan);
        best.final_ordering = std::move(run.final_ordering);
      }
    }
  }
  best.stats.result = best.result;
  best.stats.runtime_seconds = watch.seconds();
  return best;
}

}  // namespace mapf

#include "mapf/cbs.hpp"

#include <algorithm>
#include <deque>
#include <memory>
#include <queue>

namespace mapf {

namespace {

struct CtNode {
  const CtNode* parent = nullptr;
  // Delta against the parent: the replanned agent, its new path, and the
  // constraint that forced the replan. The root stores neither.
  int changed_agent = -1;
  Path changed_path;
  Constraint new_constraint;
  bool has_pair = false;
  int pair_lo = -1, pair_hi = -1;

  long long cost = 0;
  long long generation_id = 0;
  std::vector<Collision> collisions;  // of this node's plan, sorted
};

struct OpenCmp {
  bool operator()(const CtNode* a, const CtNode* b) const {
    if (a->cost != b->cost) return a->cost > b->cost;
    if (a->collisions.size() != b->collisions.size())
      return a->collisions.size() > b->collisions.size();
    return a->generation_id > b->generation_id;
  }
};

class CbsSolver {
 public:
  CbsSolver(const Instance& instance, CbsMode mode, double timeout, const SearchBudget& budget)
      : instance_(instance), mode_(mode), deadline_(timeout), budget_(budget) {}

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
  CbsMode mode_;
  Deadline deadline_;
  SearchBudget budget_;
  SolverStats stats_;

  std::deque<CtNode> pool_;
  std::vector<Path> root_plan_;
  long long next_id_ = 0;

  std::vector<const Path*> plan_of(const CtNode* node) const {
    std::vector<const Path*> paths(instance_.num_agents());
    for (const CtNode* n = node; n != nullptr; n = n->parent) {
      if (n->changed_agent >= 0 && !paths[n->changed_agent])
        paths[n->changed_agent] = &n->changed_path;
    }
    for (int i = 0; i < instance_.num_agents(); ++i)
      if (!paths[i]) paths[i] = &root_plan_[i];
    return paths;
  }

  Plan materialize(const CtNode* node) const {
    Plan plan;
    for (const Path* p : plan_of(node)) plan.push_back(*p);
    return plan;
  }

  PriorityOrdering ordering_of(const CtNode* node) const {
    std::vector<const CtNode*> chain;
    for (const CtNode* n = node; n != nullptr; n = n->parent) chain.push_back(n);
    PriorityOrdering ordering(instance_.num_agents());
    for (auto it = chain.rbegin(); it != chain.rend(); ++it)
      if ((*it)->has_pair && !ordering.precedes((*it)->pair_lo, (*it)->pair_hi))
        ordering.add((*it)->pair_lo, (*it)->pair_hi);
    return ordering;
  }

  std::vector<Constraint> constraints_of(const CtNode* node, int agent) const {
    std::vector<Constraint> cs;
    for (const CtNode* n = node; n != nullptr; n = n->parent)
      if (n->changed_agent >= 0 && n->new_constraint.agent == agent) cs.push_back(n->new_constraint);
    return cs;
  }

  std::vector<Collision> collisions_with(const std::vector<const Path*>& paths, int agent) const {
    std::vector<Collision> out;
    for (int other = 0; other < instance_.num_agents(); ++other) {
      if (other == agent) continue;
      if (!paths_collide(*paths[agent], *paths[other], instance_.semantics)) continue;
      int a = std::min(agent, other), b = std::max(agent, other);
      // Re-enumerate the colliding pair precisely.
      const Path& pa = *paths[a];
      const Path& pb = *paths[b];
      TimeStep t_max = std::max(pa.arrival(), pb.arrival());
      for (TimeStep t = 0; t <= t_max; ++t) {
        VertexId va = pa.at(t, instance_.semantics);
        VertexId vb = pb.at(t, instance_.semantics);
        if (va >= 0 && va == vb) out.push_back({CollisionKind::Vertex, a, b, -1, va, t});
        if (t >= 1) {
          VertexId ua = pa.at(t - 1, instance_.semantics);
          VertexId ub = pb.at(t - 1, instance_.semantics);
          if (ua >= 0 && va >= 0 && ub >= 0 && vb >= 0 && ua != va && ua == vb && va == ub)
            out.push_back({CollisionKind::Edge, a, b, ua, va, t});
        }
      }
    }
    return out;
  }

  TieBreakContext tie_context(const std::vector<const Path*>& paths, int agent,
                              const PriorityOrdering& ordering) const {
    TieBreakContext ctx;
    for (int k = 0; k < instance_.num_agents(); ++k) {
      if (k == agent) continue;
      if (mode_ == CbsMode::WithPriorities && ordering.precedes(agent, k))
        ctx.lower.push_back(paths[k]);
      else if (mode_ == CbsMode::WithPriorities && ordering.precedes(k, agent))
        continue;  // higher agents are excluded from tie-breaking
      else
        ctx.incomparable.push_back(paths[k]);
    }
    return ctx;
  }

  SolveOutcome search() {
    // Root: per-agent unconstrained searches; agents already planned act as
    // tie-break context for the later ones.
    root_plan_.clear();
    PriorityOrdering empty_ordering(instance_.num_agents());
    for (int i = 0; i < instance_.num_agents(); ++i) {
      TieBreakContext ctx;
      for (const Path& p : root_plan_) ctx.incomparable.push_back(&p);
      auto path = constrained_shortest_path(instance_.graph, instance_.agents[i], {},
                                            instance_.semantics, ctx, &stats_, budget_,
                                            deadline_);
      if (!path) return {SolveResult::NoSolution, std::nullopt, std::nullopt, {}};
      root_plan_.push_back(std::move(*path));
    }

    pool_.emplace_back();
    CtNode* root = &pool_.back();
    root->generation_id = next_id_++;
    {
      Plan plan = materialize(root);
      root->cost = flowtime(plan);
      root->collisions = detect_collisions(instance_, plan);
    }

    std::priority_queue<const CtNode*, std::vector<const CtNode*>, OpenCmp> open;
    open.push(root);

    while (!open.empty()) {
      if (deadline_.expired()) throw TimeoutError();
      const CtNode* node = open.top();
      open.pop();
      ++stats_.high_level_expansions;

      if (node->collisions.empty()) {
        SolveOutcome out;
        out.result = SolveResult::Solved;
        out.plan = materialize(node);
        out.final_ordering = ordering_of(node);
        return out;
      }

      const Collision collision = node->collisions.front();  // earliest, lowest pair
      PriorityOrdering ordering = ordering_of(node);
      auto paths = plan_of(node);

      for (int side = 0; side < 2; ++side) {
        int i = side == 0 ? collision.agent_a : collision.agent_b;
        int j = collision.other(i);
        if (mode_ == CbsMode::WithPriorities && ordering.precedes(i, j))
          continue;  // antisymmetry gate: constraining i would need j < i

        CtNode child;
        child.parent = node;
        child.changed_agent = i;
        child.new_constraint.agent = i;
        child.new_constraint.time = collision.time;
        if (collision.kind == CollisionKind::Vertex) {
          child.new_constraint.kind = CollisionKind::Vertex;
          child.new_constraint.v = collision.v;
        } else {
          child.new_constraint.kind = CollisionKind::Edge;
          // agent_a moves u -> v, agent_b moves v -> u
          child.new_constraint.u = i == collision.agent_a ? collision.u : collision.v;
          child.new_constraint.v = i == collision.agent_a ? collision.v : collision.u;
        }

        PriorityOrdering child_ordering = ordering;
        if (mode_ == CbsMode::WithPriorities && !child_ordering.precedes(j, i)) {
          child_ordering.add(j, i);
          child.has_pair = true;
          child.pair_lo = j;
          child.pair_hi = i;
        }

        auto constraints = constraints_of(node, i);
        constraints.push_back(child.new_constraint);
        TieBreakContext ctx = tie_context(paths, i, child_ordering);
        auto path = constrained_shortest_path(instance_.graph, instance_.agents[i], constraints,
                                              instance_.semantics, ctx, &stats_, budget_,
                                              deadline_);
        if (!path) continue;  // child not generated
        child.changed_path = std::move(*path);
        child.generation_id = next_id_++;

        pool_.push_back(std::move(child));
        CtNode* stored = &pool_.back();
        auto child_paths = plan_of(stored);
        long long cost = 0;
        for (const Path* p : child_paths) cost += p->arrival();
        stored->cost = cost;
        // Incremental collision update: drop events involving i, add the
        // replanned agent's collisions.
        for (const Collision& c : node->collisions)
          if (!c.involves(i)) stored->collisions.push_back(c);
        for (const Collision& c : collisions_with(child_paths, i)) stored->collisions.push_back(c);
        std::sort(stored->collisions.begin(), stored->collisions.end(),
                  [](const Collision& a, const Collision& b) {
                    if (a.time != b.time) return a.time < b.time;
                    if (a.agent_a != b.agent_a) return a.agent_a < b.agent_a;
                    if (a.agent_b != b.agent_b) return a.agent_b < b.agent_b;
                    return a.kind < b.kind;
                  });
        open.push(stored);
      }
    }
    return {SolveResult::NoSolution, std::nullopt, std::nullopt, {}};
  }
};

}  // namespace

SolveOutcome solve_cbs(const Instance& instance, CbsMode mode, double timeout_seconds,
                       const SearchBudget& budget) {
  CbsSolver solver(instance, mode, timeout_seconds, budget);
  return solver.run();
}

}  // namespace mapf

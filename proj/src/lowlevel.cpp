#include "mapf/lowlevel.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <queue>
#include <unordered_map>
#include <unordered_set>

namespace mapf {

namespace {

constexpr TimeStep kNever = std::numeric_limits<TimeStep>::max();

// Keys require |V| < 2^21 and t < 2^22 (asserted by the callers' horizons).
inline uint64_t vkey(VertexId v, TimeStep t) {
  return (static_cast<uint64_t>(t) << 21) | static_cast<uint64_t>(v);
}
inline uint64_t ekey(VertexId u, VertexId v, TimeStep t) {
  return (static_cast<uint64_t>(t) << 42) | (static_cast<uint64_t>(u) << 21) |
         static_cast<uint64_t>(v);
}

// Hard obstacle field. A move u -> v arriving at t is forbidden iff
// vertex (v, t) is blocked, v is parked from some time <= t, or the edge
// entry (u, v, t) is present (the reverse traversal of an obstacle move).
struct HardField {
  std::unordered_set<uint64_t> vertex;
  std::unordered_set<uint64_t> edge;
  std::vector<TimeStep> parked_from;  // per vertex; kNever if never parked
  TimeStep latest_target_block = -1;  // latest timed block on the agent's target

  bool vertex_blocked(VertexId v, TimeStep t) const {
    if (parked_from[v] <= t) return true;
    return vertex.count(vkey(v, t)) > 0;
  }
  bool edge_blocked(VertexId u, VertexId v, TimeStep t) const {
    return edge.count(ekey(u, v, t)) > 0;
  }
};

// Soft (tie-break) occupancy of one context set; events are counted, not
// distinct paths, per the approximation documented in the design notes.
struct SoftField {
  std::unordered_map<uint64_t, int> vertex;
  std::unordered_map<uint64_t, int> edge;
  std::vector<std::vector<TimeStep>> parked;  // per vertex, sorted arrival times

  void add_path(const Path& p, Semantics semantics, int vertex_count) {
    if (parked.empty()) parked.resize(vertex_count);
    for (TimeStep t = 0; t <= p.arrival(); ++t) {
      ++vertex[vkey(p.vertices[t], t)];
      if (t >= 1 && p.vertices[t] != p.vertices[t - 1])
        ++edge[ekey(p.vertices[t], p.vertices[t - 1], t)];
    }
    if (semantics == Semantics::StayAtTarget && !p.empty())
      parked[p.vertices.back()].push_back(p.arrival() + 1);
  }

  void finalize() {
    for (auto& times : parked) std::sort(times.begin(), times.end());
  }

  int events(VertexId u, VertexId v, TimeStep t) const {
    int n = 0;
    if (auto it = vertex.find(vkey(v, t)); it != vertex.end()) n += it->second;
    if (u != v) {
      if (auto it = edge.find(ekey(u, v, t)); it != edge.end()) n += it->second;
    }
    if (!parked.empty()) {
      const auto& times = parked[v];
      n += static_cast<int>(std::upper_bound(times.begin(), times.end(), t) - times.begin());
    }
    return n;
  }
};

struct SearchSetup {
  HardField hard;
  SoftField soft_inc;
  SoftField soft_low;
  TimeStep horizon = 0;          // maximum allowed arrival time
  TimeStep allow_wait_below = 0; // waits permitted from states with time < this
  std::vector<int> h_dynamic;    // heuristic while t < allow_wait_below
  std::vector<int> h_static;     // exact distance in the reduced static graph
};

struct Node {
  VertexId v;
  TimeStep t;
  int c_inc;
  int c_low;
  int parent;
};

struct OpenEntry {
  int f;
  int c_inc;
  int c_low;
  int h;
  long long seq;
  int node;
  bool operator>(const OpenEntry& o) const {
    if (f != o.f) return f > o.f;
    if (c_inc != o.c_inc) return c_inc > o.c_inc;
    if (c_low != o.c_low) return c_low > o.c_low;
    if (h != o.h) return h > o.h;
    return seq > o.seq;
  }
};

std::optional<Path> space_time_astar(const Graph& graph, const Agent& agent,
                                     const SearchSetup& setup, SolverStats* stats,
                                     const SearchBudget& budget, const Deadline& deadline) {
  assert(graph.vertex_count() < (1 << 21));
  const TimeStep horizon = std::min(setup.horizon, budget.time_horizon);
  assert(horizon < (1 << 22));
  if (setup.hard.parked_from[agent.target] != kNever) return std::nullopt;
  if (setup.h_static[agent.target] < 0) return std::nullopt;
  if ((setup.allow_wait_below > 0 ? setup.h_dynamic[agent.start]
                                  : setup.h_static[agent.start]) < 0)
    return std::nullopt;

  std::vector<Node> pool;
  std::priority_queue<OpenEntry, std::vector<OpenEntry>, std::greater<OpenEntry>> open;
  std::unordered_set<uint64_t> closed;
  long long seq = 0;
  long long expansions = 0;

  auto heuristic = [&](VertexId v, TimeStep t) -> int {
    return t < setup.allow_wait_below ? setup.h_dynamic[v] : setup.h_static[v];
  };

  pool.push_back({agent.start, 0, 0, 0, -1});
  open.push({heuristic(agent.start, 0), 0, 0, heuristic(agent.start, 0), seq++, 0});

  while (!open.empty()) {
    OpenEntry top = open.top();
    open.pop();
    const Node node = pool[top.node];
    if (!closed.insert(vkey(node.v, node.t)).second) continue;

    if (++expansions > budget.node_expansion_limit) return std::nullopt;
    if (stats) ++stats->low_level_expansions;
    if (expansions % Deadline::kCheckInterval == 0 && deadline.expired()) throw TimeoutError();

    if (node.v == agent.target && node.t > setup.hard.latest_target_block) {
      std::vector<VertexId> vertices(node.t + 1);
      for (int idx = top.node; idx >= 0;) {
        vertices[pool[idx].t] = pool[idx].v;
        idx = pool[idx].parent;
      }
      return Path{std::move(vertices)};
    }

    const TimeStep nt = node.t + 1;
    if (nt > horizon) continue;
    auto try_succ = [&](VertexId nv) {
      if (setup.hard.vertex_blocked(nv, nt)) return;
      if (nv != node.v && setup.hard.edge_blocked(node.v, nv, nt)) return;
      if (closed.count(vkey(nv, nt))) return;
      int h = heuristic(nv, nt);
      if (h < 0) return;
      int c_inc = node.c_inc + setup.soft_inc.events(node.v, nv, nt);
      int c_low = node.c_low + setup.soft_low.events(node.v, nv, nt);
      pool.push_back({nv, nt, c_inc, c_low, top.node});
      open.push({nt + h, c_inc, c_low, h, seq++, static_cast<int>(pool.size()) - 1});
    };
    for (VertexId nv : graph.neighbors(node.v)) try_succ(nv);
    if (node.t < setup.allow_wait_below) try_succ(node.v);
  }
  return std::nullopt;
}

void fill_soft(SearchSetup& setup, const TieBreakContext& tie_ctx, Semantics semantics,
               int vertex_count) {
  for (const Path* p : tie_ctx.incomparable) setup.soft_inc.add_path(*p, semantics, vertex_count);
  for (const Path* p : tie_ctx.lower) setup.soft_low.add_path(*p, semantics, vertex_count);
  setup.soft_inc.finalize();
  setup.soft_low.finalize();
}

}  // namespace

Path individually_optimal_path(const Graph& graph, const Agent& agent) {
  auto dist = graph.bfs_distances(agent.target);
  std::vector<VertexId> vertices{agent.start};
  VertexId cur = agent.start;
  while (cur != agent.target) {
    // Deterministic: lowest-index neighbor that decreases distance-to-target.
    for (VertexId nv : graph.neighbors(cur)) {
      if (dist[nv] == dist[cur] - 1) {
        cur = nv;
        break;
      }
    }
    vertices.push_back(cur);
  }
  return Path{std::move(vertices)};
}

std::optional<Path> constrained_shortest_path(const Graph& graph, const Agent& agent,
                                              const std::vector<Constraint>& constraints,
                                              Semantics semantics,
                                              const TieBreakContext& tie_ctx,
                                              SolverStats* stats, const SearchBudget& budget,
                                              const Deadline& deadline) {
  SearchSetup setup;
  setup.hard.parked_from.assign(graph.vertex_count(), kNever);
  TimeStep latest = 0;
  for (const Constraint& c : constraints) {
    if (c.agent != agent.index) continue;
    latest = std::max(latest, c.time);
    if (c.kind == CollisionKind::Vertex) {
      setup.hard.vertex.insert(vkey(c.v, c.time));
      if (c.v == agent.target)
        setup.hard.latest_target_block = std::max(setup.hard.latest_target_block, c.time);
    } else {
      setup.hard.edge.insert(ekey(c.u, c.v, c.time));
    }
  }
  if (semantics == Semantics::DisappearAtTarget) setup.hard.latest_target_block = -1;
  setup.horizon = latest + graph.vertex_count();
  setup.allow_wait_below = setup.horizon;  // waits allowed everywhere
  setup.h_dynamic = graph.bfs_distances(agent.target);
  setup.h_static = setup.h_dynamic;
  fill_soft(setup, tie_ctx, semantics, graph.vertex_count());
  return space_time_astar(graph, agent, setup, stats, budget, deadline);
}

std::optional<Path> prioritized_shortest_path(const Graph& graph, const Agent& agent,
                                              const std::vector<const Path*>& higher_paths,
                                              Semantics semantics,
                                              const TieBreakContext& tie_ctx,
                                              SolverStats* stats, const SearchBudget& budget,
                                              const Deadline& deadline) {
  SearchSetup setup;
  setup.hard.parked_from.assign(graph.vertex_count(), kNever);
  TimeStep t_max = 0;
  for (const Path* p : higher_paths) {
    if (p->empty()) continue;
    t_max = std::max(t_max, p->arrival());
    for (TimeStep t = 0; t <= p->arrival(); ++t) {
      VertexId v = p->vertices[t];
      setup.hard.vertex.insert(vkey(v, t));
      if (v == agent.target) setup.hard.latest_target_block =
          std::max(setup.hard.latest_target_block, t);
      if (t >= 1 && v != p->vertices[t - 1])
        setup.hard.edge.insert(ekey(v, p->vertices[t - 1], t));
    }
    if (semantics == Semantics::StayAtTarget)
      setup.hard.parked_from[p->vertices.back()] =
          std::min(setup.hard.parked_from[p->vertices.back()], p->arrival());
  }
  if (semantics == Semantics::DisappearAtTarget) {
    // The agent vanishes at arrival; later visits of its target by higher
    // agents are irrelevant to the stopping rule.
    setup.hard.latest_target_block = -1;
  }
  setup.horizon = t_max + graph.vertex_count();
  setup.allow_wait_below = t_max;  // static switchover: no waits from t >= t_max
  setup.h_dynamic = graph.bfs_distances(agent.target);
  if (semantics == Semantics::StayAtTarget) {
    std::vector<char> blocked(graph.vertex_count(), 0);
    for (VertexId v = 0; v < graph.vertex_count(); ++v)
      if (setup.hard.parked_from[v] != kNever) blocked[v] = 1;
    setup.h_static = graph.bfs_distances(agent.target, &blocked);
  } else {
    setup.h_static = setup.h_dynamic;
  }
  fill_soft(setup, tie_ctx, semantics, graph.vertex_count());
  return space_time_astar(graph, agent, setup, stats, budget, deadline);
}

int count_path_collisions(const Path& path, const std::vector<const Path*>& other_paths,
                          Semantics semantics) {
  int n = 0;
  for (const Path* other : other_paths)
    if (paths_collide(path, *other, semantics)) ++n;
  return n;
}

}  // namespace mapf

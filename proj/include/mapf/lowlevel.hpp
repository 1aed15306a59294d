#pragma once

#include <optional>
#include <vector>

#include "mapf/collision.hpp"
#include "mapf/stats.hpp"

namespace mapf {

struct SpaceTimeState {
  VertexId vertex = 0;
  TimeStep time = 0;
};

// Paths used only for tie-breaking, never as hard obstacles. `incomparable`
// holds agents incomparable with the planning agent, `lower` the agents
// strictly below it; the two sets are disjoint and exclude higher agents.
struct TieBreakContext {
  std::vector<const Path*> incomparable;
  std::vector<const Path*> lower;
};

// Shortest path by graph distance, no wait steps, deterministic.
Path individually_optimal_path(const Graph& graph, const Agent& agent);

// Space-time A* honoring the given vertex/edge constraints. Minimum
// arrival first; ties prefer fewer collision events with tie_ctx paths.
// Horizon: latest constraint timestep + |V| (also capped by the budget).
// Returns nullopt when no path exists within the horizon or the node
// budget runs out. Throws TimeoutError on deadline expiry.
std::optional<Path> constrained_shortest_path(
    const Graph& graph, const Agent& agent, const std::vector<Constraint>& constraints,
    Semantics semantics, const TieBreakContext& tie_ctx, SolverStats* stats = nullptr,
    const SearchBudget& budget = SearchBudget{}, const Deadline& deadline = Deadline{});

// Minimum-arrival path avoiding all collisions with higher_paths. Dynamic
// space-time search up to the latest higher arrival, then a static no-wait
// search on the reduced graph (parked targets removed under StayAtTarget).
std::optional<Path> prioritized_shortest_path(
    const Graph& graph, const Agent& agent, const std::vector<const Path*>& higher_paths,
    Semantics semantics, const TieBreakContext& tie_ctx, SolverStats* stats = nullptr,
    const SearchBudget& budget = SearchBudget{}, const Deadline& deadline = Deadline{});

// Number of distinct other paths that have at least one collision with `path`.
int count_path_collisions(const Path& path, const std::vector<const Path*>& other_paths,
                          Semantics semantics);

}  // namespace mapf

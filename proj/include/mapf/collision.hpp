#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mapf/plan.hpp"

namespace mapf {

enum class CollisionKind { Vertex, Edge };

// Vertex: agents a < b occupy `v` at `time`.
// Edge: agent a moves u -> v while agent b moves v -> u, arriving at `time`.
struct Collision {
  CollisionKind kind = CollisionKind::Vertex;
  int agent_a = 0;  // always agent_a < agent_b
  int agent_b = 0;
  VertexId u = -1;  // unused for Vertex collisions
  VertexId v = -1;
  TimeStep time = 0;

  bool involves(int agent) const { return agent == agent_a || agent == agent_b; }
  int other(int agent) const { return agent == agent_a ? agent_b : agent_a; }
};

bool operator==(const Collision& a, const Collision& b);

// Vertex(v, t): the agent may not occupy v at time t.
// Edge(u, v, t): the agent may not move u -> v arriving at time t.
struct Constraint {
  int agent = 0;
  CollisionKind kind = CollisionKind::Vertex;
  VertexId u = -1;
  VertexId v = -1;
  TimeStep time = 0;
};

// All vertex/edge collisions of the plan, sorted by
// (time, agent_a, agent_b, kind) with Vertex < Edge.
std::vector<Collision> detect_collisions(const Instance& instance, const Plan& plan);

std::optional<Collision> first_collision(const Instance& instance, const Plan& plan);

// True iff the two paths have at least one collision under `semantics`.
bool paths_collide(const Path& a, const Path& b, Semantics semantics);

struct Violation {
  std::string message;
};

// Path invariants (endpoints, adjacency, stay/disappear tail shape) plus
// collision freedom. Empty result means the plan is a valid solution.
std::vector<Violation> validate_solution(const Instance& instance, const Plan& plan);

}  // namespace mapf

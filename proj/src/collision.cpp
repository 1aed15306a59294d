#include "mapf/collision.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace mapf {

bool operator==(const Collision& a, const Collision& b) {
  return a.kind == b.kind && a.agent_a == b.agent_a && a.agent_b == b.agent_b &&
         a.u == b.u && a.v == b.v && a.time == b.time;
}

namespace {

void collect_pair_collisions(int i, int j, const Path& pi, const Path& pj,
                             Semantics semantics, TimeStep t,
                             std::vector<Collision>& out) {
  VertexId vi = pi.at(t, semantics);
  VertexId vj = pj.at(t, semantics);
  if (vi >= 0 && vi == vj) {
    out.push_back({CollisionKind::Vertex, i, j, -1, vi, t});
  }
  if (t >= 1) {
    VertexId ui = pi.at(t - 1, semantics);
    VertexId uj = pj.at(t - 1, semantics);
    if (ui >= 0 && vi >= 0 && uj >= 0 && vj >= 0 && ui != vi && ui == vj && vi == uj) {
      out.push_back({CollisionKind::Edge, i, j, ui, vi, t});
    }
  }
}

}  // namespace

std::vector<Collision> detect_collisions(const Instance& instance, const Plan& plan) {
  const int m = static_cast<int>(plan.size());
  TimeStep t_max = makespan(plan);
  std::vector<Collision> out;
  for (TimeStep t = 0; t <= t_max; ++t) {
    for (int i = 0; i < m; ++i) {
      for (int j = i + 1; j < m; ++j) {
        collect_pair_collisions(i, j, plan[i], plan[j], instance.semantics, t, out);
      }
    }
  }
  // Generation order is (time, pair); within one (time, pair) slot Vertex
  // precedes Edge, which matches the required sort key already.
  return out;
}

std::optional<Collision> first_collision(const Instance& instance, const Plan& plan) {
  const int m = static_cast<int>(plan.size());
  TimeStep t_max = makespan(plan);
  std::vector<Collision> found;
  for (TimeStep t = 0; t <= t_max; ++t) {
    for (int i = 0; i < m && found.empty(); ++i) {
      for (int j = i + 1; j < m && found.empty(); ++j) {
        collect_pair_collisions(i, j, plan[i], plan[j], instance.semantics, t, found);
      }
    }
    if (!found.empty()) return found.front();
  }
  return std::nullopt;
}

bool paths_collide(const Path& a, const Path& b, Semantics semantics) {
  TimeStep t_max = std::max(a.arrival(), b.arrival());
  std::vector<Collision> found;
  for (TimeStep t = 0; t <= t_max; ++t) {
    collect_pair_collisions(0, 1, a, b, semantics, t, found);
    if (!found.empty()) return true;
  }
  return false;
}

std::vector<Violation> validate_solution(const Instance& instance, const Plan& plan) {
  std::vector<Violation> out;
  auto add = [&out](const std::string& msg) { out.push_back({msg}); };

  if (static_cast<int>(plan.size()) != instance.num_agents()) {
    add("plan has " + std::to_string(plan.size()) + " paths for " +
        std::to_string(instance.num_agents()) + " agents");
    return out;
  }
  for (int i = 0; i < instance.num_agents(); ++i) {
    const Path& p = plan[i];
    const Agent& a = instance.agents[i];
    std::string tag = "agent " + std::to_string(i + 1) + ": ";
    if (p.empty()) {
      add(tag + "empty path");
      continue;
    }
    if (p.vertices.front() != a.start) add(tag + "path does not begin at the start vertex");
    if (p.vertices.back() != a.target) add(tag + "path does not end at the target vertex");
    for (size_t t = 1; t < p.vertices.size(); ++t) {
      VertexId u = p.vertices[t - 1], v = p.vertices[t];
      if (u != v && !instance.graph.has_edge(u, v))
        add(tag + "non-adjacent step " + std::to_string(t - 1) + "->" + std::to_string(t));
    }
    if (p.vertices.size() >= 2 && p.vertices[p.vertices.size() - 2] == p.vertices.back())
      add(tag + "trailing wait at target (arrival time not minimal)");
    if (instance.semantics == Semantics::DisappearAtTarget) {
      for (size_t t = 0; t + 1 < p.vertices.size(); ++t)
        if (p.vertices[t] == a.target)
          add(tag + "revisits target before final step under disappear semantics");
    }
  }
  for (const Collision& c : detect_collisions(instance, plan)) {
    std::ostringstream os;
    os << (c.kind == CollisionKind::Vertex ? "vertex" : "edge") << " collision between agents "
       << (c.agent_a + 1) << " and " << (c.agent_b + 1) << " at t=" << c.time;
    add(os.str());
  }
  return out;
}

}  // namespace mapf

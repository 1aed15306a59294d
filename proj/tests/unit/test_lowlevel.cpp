#include <algorithm>
#include <deque>
#include <set>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "mapf/collision.hpp"
#include "mapf/io.hpp"
#include "mapf/lowlevel.hpp"
#include "mapf/rng.hpp"

using namespace mapf;
using testutil::line_graph;
using testutil::load_fixture;
using testutil::make_instance;
using testutil::path_of;

namespace {

Instance random_grid_instance(int size, int m, uint64_t seed, Semantics semantics) {
  return generate_random_instance(size, size, 0.1, m, seed, semantics);
}

// Reference: breadth-first enumeration over (vertex, time) honoring the
// constraint set, up to `horizon`. Returns the minimum arrival or -1.
int reference_constrained_arrival(const Graph& graph, const Agent& agent,
                                  const std::vector<Constraint>& constraints,
                                  Semantics semantics, int horizon) {
  int latest_target_block = -1;
  if (semantics == Semantics::StayAtTarget) {
    for (const Constraint& c : constraints)
      if (c.kind == CollisionKind::Vertex && c.v == agent.target)
        latest_target_block = std::max(latest_target_block, c.time);
  }
  auto violates = [&](VertexId from, VertexId to, int t) {
    for (const Constraint& c : constraints) {
      if (c.kind == CollisionKind::Vertex && c.v == to && c.time == t) return true;
      if (c.kind == CollisionKind::Edge && c.u == from && c.v == to && c.time == t) return true;
    }
    return false;
  };
  std::set<std::pair<VertexId, int>> seen;
  std::deque<std::pair<VertexId, int>> queue;
  if (!violates(agent.start, agent.start, 0)) queue.push_back({agent.start, 0});
  while (!queue.empty()) {
    auto [v, t] = queue.front();
    queue.pop_front();
    if (!seen.insert({v, t}).second) continue;
    if (v == agent.target && t > latest_target_block) return t;
    if (t >= horizon) continue;
    auto step = [&](VertexId nv) {
      if (!violates(v, nv, t + 1)) queue.push_back({nv, t + 1});
    };
    step(v);
    for (VertexId nv : graph.neighbors(v)) step(nv);
  }
  return -1;
}

}  // namespace

TEST_CASE("individually optimal path") {
  Graph corridor = line_graph(5);
  SUBCASE("start equals target") {
    Path p = individually_optimal_path(corridor, {0, 2, 2});
    CHECK(p.arrival() == 0);
    CHECK(p.vertices == std::vector<VertexId>{2});
  }
  SUBCASE("corridor end to end") {
    Path p = individually_optimal_path(corridor, {0, 0, 4});
    CHECK(p.arrival() == 4);
  }
  SUBCASE("arrival equals breadth-first distance on a random grid") {
    for (uint64_t seed : {1, 2, 3}) {
      Instance inst = random_grid_instance(8, 4, seed, Semantics::StayAtTarget);
      for (const Agent& a : inst.agents) {
        Path p = individually_optimal_path(inst.graph, a);
        CHECK(p.arrival() == inst.graph.bfs_distances(a.start)[a.target]);
        for (size_t t = 0; t + 1 < p.vertices.size(); ++t)
          CHECK(p.vertices[t] != p.vertices[t + 1]);  // no waits
      }
    }
  }
}

TEST_CASE("constrained shortest path") {
  Graph corridor = line_graph(3);
  Agent agent{0, 0, 2};

  SUBCASE("no constraints matches the unconstrained optimum") {
    auto p = constrained_shortest_path(corridor, agent, {}, Semantics::StayAtTarget, {});
    REQUIRE(p.has_value());
    CHECK(p->vertices == std::vector<VertexId>{0, 1, 2});
  }
  SUBCASE("one vertex constraint forces one wait") {
    std::vector<Constraint> cs{{0, CollisionKind::Vertex, -1, 1, 1}};
    auto p = constrained_shortest_path(corridor, agent, cs, Semantics::StayAtTarget, {});
    REQUIRE(p.has_value());
    CHECK(p->vertices == std::vector<VertexId>{0, 0, 1, 2});
  }
  SUBCASE("target blocked through t pushes arrival past it") {
    std::vector<Constraint> cs;
    for (int t = 0; t <= 5; ++t) cs.push_back({0, CollisionKind::Vertex, -1, 2, t});
    auto p = constrained_shortest_path(corridor, agent, cs, Semantics::StayAtTarget, {});
    REQUIRE(p.has_value());
    CHECK(p->arrival() == 6);
  }
  SUBCASE("edge constraint forbids the crossing") {
    std::vector<Constraint> cs{{0, CollisionKind::Edge, 1, 2, 2}};
    auto p = constrained_shortest_path(corridor, agent, cs, Semantics::StayAtTarget, {});
    REQUIRE(p.has_value());
    CHECK(p->arrival() == 3);
    CHECK(detect_collisions(make_instance(corridor, {{0, 2}}), {*p}).empty());
  }
  SUBCASE("exhausted node budget returns none") {
    SearchBudget tiny;
    tiny.node_expansion_limit = 1;
    std::vector<Constraint> cs{{0, CollisionKind::Vertex, -1, 2, 3}};
    auto p = constrained_shortest_path(corridor, agent, cs, Semantics::StayAtTarget, {}, nullptr,
                                       tiny);
    CHECK(!p.has_value());
  }
  SUBCASE("expansions are counted") {
    SolverStats stats;
    auto p = constrained_shortest_path(corridor, agent, {}, Semantics::StayAtTarget, {}, &stats);
    REQUIRE(p.has_value());
    CHECK(stats.low_level_expansions > 0);
  }
}

TEST_CASE("constrained search arrival matches exhaustive enumeration") {
  SplitMix64 rng(4242);
  for (int trial = 0; trial < 60; ++trial) {
    Instance inst = random_grid_instance(4, 2, 1000 + trial, Semantics::StayAtTarget);
    const Agent& agent = inst.agents[0];
    int n = inst.graph.vertex_count();
    std::vector<Constraint> cs;
    int n_constraints = static_cast<int>(rng.next_below(7));
    int latest = 0;
    for (int k = 0; k < n_constraints; ++k) {
      int t = 1 + static_cast<int>(rng.next_below(6));
      latest = std::max(latest, t);
      if (rng.next_below(2) == 0) {
        cs.push_back({0, CollisionKind::Vertex, -1, static_cast<VertexId>(rng.next_below(n)), t});
      } else {
        VertexId u = static_cast<VertexId>(rng.next_below(n));
        const auto& nb = inst.graph.neighbors(u);
        cs.push_back({0, CollisionKind::Edge, u, nb[rng.next_below(nb.size())], t});
      }
    }
    int horizon = latest + n;
    int want = reference_constrained_arrival(inst.graph, agent, cs, inst.semantics, horizon);
    auto got = constrained_shortest_path(inst.graph, agent, cs, inst.semantics, {});
    if (want < 0) {
      CHECK(!got.has_value());
    } else {
      REQUIRE(got.has_value());
      CHECK(got->arrival() == want);
    }
  }
}

TEST_CASE("prioritized shortest path") {
  SUBCASE("no higher agents matches the unconstrained optimum") {
    Graph corridor = line_graph(5);
    auto p = prioritized_shortest_path(corridor, {0, 0, 4}, {}, Semantics::StayAtTarget, {});
    REQUIRE(p.has_value());
    CHECK(p->arrival() == 4);
  }
  SUBCASE("yielding agent dodges into the pocket") {
    Instance inst = load_fixture("corridor_pocket.fixture");
    Path first = individually_optimal_path(inst.graph, inst.agents[0]);
    std::vector<const Path*> higher{&first};
    auto p = prioritized_shortest_path(inst.graph, inst.agents[1], higher, inst.semantics, {});
    REQUIRE(p.has_value());
    CHECK(p->arrival() == 4);
    Plan plan{first, *p};
    CHECK(detect_collisions(inst, plan).empty());
  }
  SUBCASE("parked higher agent on the only approach blocks the target forever") {
    Graph corridor = line_graph(3);
    Path parked = path_of({1});
    std::vector<const Path*> higher{&parked};
    auto p =
        prioritized_shortest_path(corridor, {0, 0, 2}, higher, Semantics::StayAtTarget, {});
    CHECK(!p.has_value());
    // Under disappear semantics the same agent is gone immediately.
    auto q =
        prioritized_shortest_path(corridor, {0, 0, 2}, higher, Semantics::DisappearAtTarget, {});
    REQUIRE(q.has_value());
  }
  SUBCASE("parked higher agent on the target itself") {
    Graph corridor = line_graph(3);
    Path parked = path_of({0, 1, 2});
    std::vector<const Path*> higher{&parked};
    auto p =
        prioritized_shortest_path(corridor, {0, 0, 2}, higher, Semantics::StayAtTarget, {});
    CHECK(!p.has_value());
  }
}

TEST_CASE("prioritized paths never collide with higher paths and switch over cleanly") {
  for (Semantics semantics : {Semantics::StayAtTarget, Semantics::DisappearAtTarget}) {
    for (uint64_t seed = 1; seed <= 10; ++seed) {
      Instance inst = random_grid_instance(8, 5, seed, semantics);
      std::vector<Path> paths;
      for (const Agent& agent : inst.agents) {
        std::vector<const Path*> higher;
        for (const Path& p : paths) higher.push_back(&p);
        auto p = prioritized_shortest_path(inst.graph, agent, higher, semantics, {});
        REQUIRE(p.has_value());
        for (const Path& h : paths) CHECK(!paths_collide(h, *p, semantics));

        // Replay must be bit-identical.
        auto again = prioritized_shortest_path(inst.graph, agent, higher, semantics, {});
        REQUIRE(again.has_value());
        CHECK(again->vertices == p->vertices);

        // Past the last higher arrival the path takes no waits and its
        // suffix is a shortest route in the residual graph.
        TimeStep t_max = 0;
        for (const Path& h : paths) t_max = std::max(t_max, h.arrival());
        if (p->arrival() > t_max) {
          for (TimeStep t = std::max(t_max, 0); t < p->arrival(); ++t)
            CHECK(p->vertices[t] != p->vertices[t + 1]);
          std::vector<char> blocked(inst.graph.vertex_count(), 0);
          if (semantics == Semantics::StayAtTarget)
            for (const Path& h : paths) blocked[h.vertices.back()] = 1;
          auto dist = inst.graph.bfs_distances(p->vertices[t_max], &blocked);
          CHECK(p->arrival() - t_max == dist[agent.target]);
        }
        paths.push_back(std::move(*p));
      }
    }
  }
}

TEST_CASE("count_path_collisions counts distinct paths, not events") {
  Semantics stay = Semantics::StayAtTarget;
  Path a = path_of({0, 1, 2});
  Path far = path_of({5, 6});
  CHECK(count_path_collisions(a, {&far}, stay) == 0);
  Path same = path_of({0, 1, 2});
  CHECK(count_path_collisions(a, {&same}, stay) == 1);
  // One swap plus a vertex hit against the same other path still counts once.
  Path back = path_of({1, 0, 1, 2});
  CHECK(count_path_collisions(a, {&back}, stay) == 1);
  CHECK(count_path_collisions(a, {&back, &same}, stay) == 2);
}

#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "mapf/io.hpp"
#include "mapf/lowlevel.hpp"
#include "mapf/oracle.hpp"
#include "mapf/pbs.hpp"

using namespace mapf;
using testutil::line_graph;
using testutil::load_fixture;
using testutil::make_instance;

TEST_CASE("joint optimum basics") {
  SUBCASE("single agent corridor") {
    auto inst = make_instance(line_graph(3), {{0, 2}});
    auto plan = joint_optimal(inst);
    REQUIRE(plan.has_value());
    CHECK(flowtime(*plan) == 2);
    CHECK(validate_solution(inst, *plan).empty());
  }
  SUBCASE("two agents swapping across one edge is unsolvable") {
    auto inst = make_instance(line_graph(2), {{0, 1}, {1, 0}});
    CHECK(!joint_optimal(inst).has_value());
  }
  SUBCASE("agents already home cost nothing") {
    auto inst = make_instance(line_graph(3), {{0, 0}, {2, 2}});
    auto plan = joint_optimal(inst);
    REQUIRE(plan.has_value());
    CHECK(flowtime(*plan) == 0);
  }
  SUBCASE("corridor fixture golden value") {
    Instance inst = load_fixture("corridor_pocket.fixture");
    auto plan = joint_optimal(inst);
    REQUIRE(plan.has_value());
    CHECK(validate_solution(inst, *plan).empty());
    CHECK(flowtime(*plan) == 8);
  }
  SUBCASE("cost cap turns into none") {
    Instance inst = load_fixture("corridor_pocket.fixture");
    CHECK(!joint_optimal(inst, 7).has_value());
    CHECK(joint_optimal(inst, 8).has_value());
  }
  SUBCASE("disappear semantics can only be cheaper") {
    for (uint64_t seed = 1; seed <= 5; ++seed) {
      Instance stay = generate_random_instance(4, 4, 0.1, 3, seed, Semantics::StayAtTarget);
      Instance gone = stay;
      gone.semantics = Semantics::DisappearAtTarget;
      auto a = joint_optimal(stay);
      auto b = joint_optimal(gone);
      if (a.has_value()) {
        REQUIRE(b.has_value());
        CHECK(flowtime(*b) <= flowtime(*a));
      }
    }
  }
  SUBCASE("state space guard") {
    Instance big = generate_random_instance(8, 8, 0.0, 10, 1);
    CHECK_THROWS_AS(joint_optimal(big), RefusedTooLarge);
  }
}

TEST_CASE("ordering enumeration") {
  SUBCASE("corridor fixture solves only when the crossing agent leads") {
    Instance inst = load_fixture("corridor_pocket.fixture");
    auto table = enumerate_total_orderings(inst);
    REQUIRE(table.size() == 2);
    int solved = 0;
    for (const auto& row : table) {
      if (row.solved) {
        ++solved;
        CHECK(row.order == std::vector<int>{0, 1});
        CHECK(row.flowtime == 8);
      }
    }
    CHECK(solved == 1);
  }
  SUBCASE("well-formed fixture solves under every order") {
    Instance inst = load_fixture("open_grid_wellformed.fixture");
    CHECK(wellformed_check(inst));
    auto table = enumerate_total_orderings(inst);
    CHECK(table.size() == 6);
    for (const auto& row : table) CHECK(row.solved);
  }
  SUBCASE("single agent") {
    auto inst = make_instance(line_graph(3), {{0, 2}});
    auto table = enumerate_total_orderings(inst);
    REQUIRE(table.size() == 1);
    CHECK(table[0].solved);
  }
  SUBCASE("refuses factorial blowups") {
    Instance big = generate_random_instance(8, 8, 0.0, 6, 1);
    CHECK_THROWS_AS(enumerate_total_orderings(big, 5), RefusedTooLarge);
  }
  SUBCASE("any solving permutation means priority search also solves") {
    for (uint64_t seed = 1; seed <= 6; ++seed) {
      Instance inst = generate_random_instance(4, 4, 0.1, 3, seed);
      auto table = enumerate_total_orderings(inst);
      bool any = false;
      for (const auto& row : table) any = any || row.solved;
      if (any)
        CHECK(solve_pbs(inst, PriorityOrdering(3), 10.0).result == SolveResult::Solved);
    }
  }
}

TEST_CASE("well-formedness check") {
  SUBCASE("open grid fixture is well-formed") {
    CHECK(wellformed_check(load_fixture("open_grid_wellformed.fixture")));
  }
  SUBCASE("corridor fixture is not") {
    CHECK(!wellformed_check(load_fixture("corridor_pocket.fixture")));
  }
  SUBCASE("target on another agent's only route") {
    // 0-1-2: agent 1's target sits mid-corridor of agent 0's only route.
    auto inst = make_instance(line_graph(3), {{0, 2}, {1, 1}});
    CHECK(!wellformed_check(inst));
  }
  SUBCASE("single agent is always well-formed") {
    CHECK(wellformed_check(make_instance(line_graph(3), {{0, 2}})));
  }
}

TEST_CASE("consistency check") {
  auto inst = make_instance(line_graph(3), {{0, 2}});
  Plan optimal{individually_optimal_path(inst.graph, inst.agents[0])};
  CHECK(is_consistent(inst, optimal, PriorityOrdering(1)));
  Plan lazy{Path{{0, 0, 1, 2}}};  // gratuitous wait
  CHECK(!is_consistent(inst, lazy, PriorityOrdering(1)));
}

TEST_CASE("printed junction solution validates and fits its ordering") {
  Instance inst = load_fixture("junction.fixture");
  auto v = [&](const std::string& label) {
    for (int i = 0; i < inst.graph.vertex_count(); ++i)
      if (inst.label(i) == label) return i;
    FAIL("unknown label " << label);
    return -1;
  };
  Plan plan(3);
  plan[0] = Path{{v("2,1"), v("3,1"), v("4,2"), v("5,1")}};
  plan[1] = Path{{v("4,1"), v("4,1"), v("4,1"), v("3,1")}};
  plan[2] = Path{{v("2,2"), v("2,2"), v("3,1"), v("4,2")}};
  CHECK(validate_solution(inst, plan).empty());
  PriorityOrdering ordering(3);
  ordering.add(0, 2);
  ordering.add(2, 1);
  CHECK(is_consistent(inst, plan, ordering));
}

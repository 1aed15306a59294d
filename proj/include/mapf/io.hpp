#pragma once

#include <cstdint>
#include <string>

#include "mapf/collision.hpp"
#include "mapf/instance.hpp"

namespace mapf {

// movingai .map format: `type ...`, `height N`, `width N`, `map`, then
// height rows of width characters. Passable cells are '.' and 'G'.
GridMap parse_map(const std::string& text);
std::string serialize_map(const GridMap& grid);

// movingai .scen version 1. The first m entries become agents 1..m;
// remaining entries are ignored.
Instance parse_scen(const std::string& text, const GridMap& grid, int m,
                    Semantics semantics = Semantics::StayAtTarget);
std::string serialize_scen(const GridMap& grid, const Instance& instance,
                           const std::string& map_name);

// Line-oriented explicit-graph fixtures:
//   v <label>
//   e <label> <label>
//   a <start-label> <target-label>
//   semantics stay|disappear
//   # comment
Instance parse_graph_fixture(const std::string& text);
std::string serialize_graph_fixture(const Instance& instance);

// Per-agent solution lines: `agent <i>: v0 v1 ... vT` (1-based agents,
// vertex labels as stored in the instance).
std::string serialize_solution(const Instance& instance, const Plan& plan);
Plan parse_solution(const Instance& instance, const std::string& text);

// Seeded random 4-neighbor grid instances. Blocks floor(obstacle_pct *
// cells) cells, resampling layouts whose unblocked region is disconnected;
// samples m distinct starts and m distinct targets. Pure in (args, seed).
Instance generate_random_instance(int width, int height, double obstacle_pct, int m,
                                  uint64_t seed, Semantics semantics = Semantics::StayAtTarget);

// Same, but endpoint sets are resampled until every agent can reach its
// target avoiding all other agents' starts and targets.
Instance generate_wellformed_instance(int width, int height, double obstacle_pct, int m,
                                      uint64_t seed,
                                      Semantics semantics = Semantics::StayAtTarget);

// Grid attached to a generated or parsed grid instance (for serialization).
struct GeneratedInstance {
  Instance instance;
  GridMap grid;
};
GeneratedInstance generate_random_instance_with_grid(int width, int height, double obstacle_pct,
                                                     int m, uint64_t seed, Semantics semantics,
                                                     bool well_formed);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace mapf

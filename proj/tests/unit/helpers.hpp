#pragma once

#include <string>
#include <utility>
#include <vector>

#include "mapf/instance.hpp"
#include "mapf/io.hpp"

#ifndef FIXTURE_DIR
#define FIXTURE_DIR "fixtures"
#endif

namespace testutil {

inline std::string fixture_path(const std::string& name) {
  return std::string(FIXTURE_DIR) + "/" + name;
}

inline mapf::Instance load_fixture(const std::string& name) {
  return mapf::parse_graph_fixture(mapf::read_file(fixture_path(name)));
}

// Path graph 0-1-...-(n-1).
inline mapf::Graph line_graph(int n) {
  std::vector<std::pair<mapf::VertexId, mapf::VertexId>> edges;
  for (int v = 0; v + 1 < n; ++v) edges.push_back({v, v + 1});
  return mapf::Graph(n, std::move(edges));
}

inline mapf::Instance make_instance(mapf::Graph graph,
                                    std::vector<std::pair<mapf::VertexId, mapf::VertexId>> agents,
                                    mapf::Semantics semantics = mapf::Semantics::StayAtTarget) {
  mapf::Instance instance;
  instance.graph = std::move(graph);
  for (size_t i = 0; i < agents.size(); ++i)
    instance.agents.push_back({static_cast<int>(i), agents[i].first, agents[i].second});
  instance.semantics = semantics;
  return instance;
}

inline mapf::Path path_of(std::vector<mapf::VertexId> vs) { return mapf::Path{std::move(vs)}; }

}  // namespace testutil

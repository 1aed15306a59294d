#pragma once

#include <string>
#include <vector>

#include "mapf/graph.hpp"

namespace mapf {

enum class Semantics {
  StayAtTarget,     // agents park at their targets forever after arrival
  DisappearAtTarget  // agents leave the graph at their first target visit
};

struct Agent {
  int index = 0;  // 0-based internally; 1-based in files and CLI output
  VertexId start = 0;
  VertexId target = 0;
};

struct Instance {
  Graph graph;
  std::vector<Agent> agents;
  Semantics semantics = Semantics::StayAtTarget;
  std::vector<std::string> vertex_labels;  // optional; "x,y" for grids

  int num_agents() const { return static_cast<int>(agents.size()); }
  std::string label(VertexId v) const {
    return vertex_labels.empty() ? std::to_string(v) : vertex_labels[v];
  }
  // Throws on out-of-range vertices or duplicate starts/targets.
  void validate() const;
};

}  // namespace mapf

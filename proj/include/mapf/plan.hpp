#pragma once

#include <vector>

#include "mapf/instance.hpp"

namespace mapf {

// Timed vertex sequence. vertices[t] is the position at time t; arrival()
// is the index of the last element. Under StayAtTarget the agent keeps
// occupying the last vertex forever; under DisappearAtTarget it occupies
// nothing after arrival.
struct Path {
  std::vector<VertexId> vertices;

  TimeStep arrival() const { return static_cast<TimeStep>(vertices.size()) - 1; }
  bool empty() const { return vertices.empty(); }

  // Position at time t, or -1 if the agent occupies nothing then.
  VertexId at(TimeStep t, Semantics semantics) const {
    if (vertices.empty()) return -1;
    if (t <= arrival()) return vertices[t];
    return semantics == Semantics::StayAtTarget ? vertices.back() : -1;
  }
};

using Plan = std::vector<Path>;  // one path per agent index

long long flowtime(const Plan& plan);
TimeStep makespan(const Plan& plan);

}  // namespace mapf

#include "mapf/instance.hpp"

#include <set>

#include "mapf/errors.hpp"

namespace mapf {

void Instance::validate() const {
  std::set<VertexId> starts, targets;
  for (const Agent& a : agents) {
    if (a.start < 0 || a.start >= graph.vertex_count() || a.target < 0 ||
        a.target >= graph.vertex_count())
      throw Error("agent endpoint out of range");
    if (!starts.insert(a.start).second)
      throw DuplicateEndpoint("duplicate start vertex " + label(a.start));
    if (!targets.insert(a.target).second)
      throw DuplicateEndpoint("duplicate target vertex " + label(a.target));
  }
}

}  // namespace mapf

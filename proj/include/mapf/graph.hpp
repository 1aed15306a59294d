#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "mapf/errors.hpp"

namespace mapf {

using VertexId = int;
using TimeStep = int;

// Connected undirected graph with no self-loops. Adjacency lists are kept
// sorted so every traversal order is deterministic.
class Graph {
 public:
  Graph() = default;
  Graph(int vertex_count, std::vector<std::pair<VertexId, VertexId>> edges);

  int vertex_count() const { return static_cast<int>(adjacency_.size()); }
  std::size_t edge_count() const { return edge_count_; }
  const std::vector<VertexId>& neighbors(VertexId v) const { return adjacency_[v]; }
  bool has_edge(VertexId u, VertexId v) const;

  // BFS distances from source; -1 for unreachable. `blocked` (optional,
  // size |V|) removes vertices entirely; a blocked source yields all -1.
  std::vector<int> bfs_distances(VertexId source,
                                 const std::vector<char>* blocked = nullptr) const;

 private:
  std::vector<std::vector<VertexId>> adjacency_;
  std::size_t edge_count_ = 0;
};

struct GridMap {
  int width = 0;
  int height = 0;
  std::vector<char> blocked;  // row-major, height*width

  bool in_bounds(int x, int y) const { return x >= 0 && x < width && y >= 0 && y < height; }
  bool is_blocked(int x, int y) const { return blocked[y * width + x] != 0; }
  void set_blocked(int x, int y, bool b) { blocked[y * width + x] = b ? 1 : 0; }
  int cell_count() const { return width * height; }
};

struct GridGraph {
  Graph graph;
  std::vector<VertexId> cell_to_vertex;         // -1 for blocked cells
  std::vector<std::pair<int, int>> vertex_to_cell;  // (x, y)
};

// One vertex per unblocked cell, edges between 4-neighbors. Throws
// DisconnectedMap if the unblocked region is not connected (or empty).
GridGraph build_graph_from_grid(const GridMap& grid);

}  // namespace mapf

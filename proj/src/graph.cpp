#include "mapf/graph.hpp"

#include <algorithm>
#include <deque>

namespace mapf {

Graph::Graph(int vertex_count, std::vector<std::pair<VertexId, VertexId>> edges) {
  if (vertex_count < 0) throw Error("negative vertex count");
  adjacency_.assign(vertex_count, {});
  // Canonicalize to u < v and deduplicate.
  for (auto& e : edges) {
    if (e.first == e.second) throw Error("self-loop edge");
    if (e.first < 0 || e.second < 0 || e.first >= vertex_count || e.second >= vertex_count)
      throw Error("edge endpoint out of range");
    if (e.first > e.second) std::swap(e.first, e.second);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  edge_count_ = edges.size();
  for (const auto& [u, v] : edges) {
    adjacency_[u].push_back(v);
    adjacency_[v].push_back(u);
  }
  for (auto& nbrs : adjacency_) std::sort(nbrs.begin(), nbrs.end());

  if (vertex_count > 0) {
    auto dist = bfs_distances(0);
    for (int v = 0; v < vertex_count; ++v)
      if (dist[v] < 0) throw DisconnectedMap("graph is not connected");
  }
}

bool Graph::has_edge(VertexId u, VertexId v) const {
  const auto& nbrs = adjacency_[u];
  return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

std::vector<int> Graph::bfs_distances(VertexId source, const std::vector<char>* blocked) const {
  std::vector<int> dist(vertex_count(), -1);
  if (blocked && (*blocked)[source]) return dist;
  std::deque<VertexId> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    VertexId u = queue.front();
    queue.pop_front();
    for (VertexId v : adjacency_[u]) {
      if (dist[v] >= 0) continue;
      if (blocked && (*blocked)[v]) continue;
      dist[v] = dist[u] + 1;
      queue.push_back(v);
    }
  }
  return dist;
}

GridGraph build_graph_from_grid(const GridMap& grid) {
  GridGraph out;
  out.cell_to_vertex.assign(grid.cell_count(), -1);
  for (int y = 0; y < grid.height; ++y) {
    for (int x = 0; x < grid.width; ++x) {
      if (grid.is_blocked(x, y)) continue;
      out.cell_to_vertex[y * grid.width + x] = static_cast<int>(out.vertex_to_cell.size());
      out.vertex_to_cell.emplace_back(x, y);
    }
  }
  if (out.vertex_to_cell.empty()) throw DisconnectedMap("map has no unblocked cells");
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (int y = 0; y < grid.height; ++y) {
    for (int x = 0; x < grid.width; ++x) {
      VertexId u = out.cell_to_vertex[y * grid.width + x];
      if (u < 0) continue;
      if (x + 1 < grid.width) {
        VertexId v = out.cell_to_vertex[y * grid.width + x + 1];
        if (v >= 0) edges.emplace_back(u, v);
      }
      if (y + 1 < grid.height) {
        VertexId v = out.cell_to_vertex[(y + 1) * grid.width + x];
        if (v >= 0) edges.emplace_back(u, v);
      }
    }
  }
  out.graph = Graph(static_cast<int>(out.vertex_to_cell.size()), std::move(edges));
  return out;
}

}  // namespace mapf

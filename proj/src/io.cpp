#include "mapf/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include "mapf/oracle.hpp"
#include "mapf/rng.hpp"

namespace mapf {

namespace {

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

std::vector<std::string> tokenize(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> tokens;
  std::string tok;
  while (in >> tok) tokens.push_back(tok);
  return tokens;
}

bool passable(char c) { return c == '.' || c == 'G'; }

Instance grid_instance(const GridGraph& gg, std::vector<Agent> agents, Semantics semantics) {
  Instance instance;
  instance.graph = gg.graph;
  instance.agents = std::move(agents);
  instance.semantics = semantics;
  instance.vertex_labels.reserve(gg.vertex_to_cell.size());
  for (const auto& [x, y] : gg.vertex_to_cell)
    instance.vertex_labels.push_back(std::to_string(x) + "," + std::to_string(y));
  instance.validate();
  return instance;
}

}  // namespace

GridMap parse_map(const std::string& text) {
  auto lines = split_lines(text);
  if (lines.size() < 4) throw MalformedHeader("map file too short");
  auto expect_int = [&](const std::string& line, const std::string& key) -> int {
    auto tokens = tokenize(line);
    if (tokens.size() != 2 || tokens[0] != key)
      throw MalformedHeader("expected '" + key + " N', got: " + line);
    try {
      return std::stoi(tokens[1]);
    } catch (const std::exception&) {
      throw MalformedHeader("bad " + key + " value: " + tokens[1]);
    }
  };
  if (tokenize(lines[0]).empty() || tokenize(lines[0])[0] != "type")
    throw MalformedHeader("missing 'type' line");
  GridMap grid;
  grid.height = expect_int(lines[1], "height");
  grid.width = expect_int(lines[2], "width");
  if (grid.height <= 0 || grid.width <= 0) throw MalformedHeader("non-positive dimensions");
  if (tokenize(lines[3]).size() != 1 || tokenize(lines[3])[0] != "map")
    throw MalformedHeader("missing 'map' line");

  std::vector<std::string> rows;
  for (size_t k = 4; k < lines.size(); ++k) {
    if (lines[k].empty() && k + 1 == lines.size()) break;  // trailing newline
    rows.push_back(lines[k]);
  }
  if (static_cast<int>(rows.size()) != grid.height)
    throw DimensionMismatch("expected " + std::to_string(grid.height) + " rows, got " +
                            std::to_string(rows.size()));
  grid.blocked.assign(grid.cell_count(), 1);
  for (int y = 0; y < grid.height; ++y) {
    if (static_cast<int>(rows[y].size()) != grid.width)
      throw DimensionMismatch("row " + std::to_string(y) + " has width " +
                              std::to_string(rows[y].size()));
    for (int x = 0; x < grid.width; ++x) grid.set_blocked(x, y, !passable(rows[y][x]));
  }
  return grid;
}

std::string serialize_map(const GridMap& grid) {
  std::ostringstream out;
  out << "type octile\nheight " << grid.height << "\nwidth " << grid.width << "\nmap\n";
  for (int y = 0; y < grid.height; ++y) {
    for (int x = 0; x < grid.width; ++x) out << (grid.is_blocked(x, y) ? '@' : '.');
    out << '\n';
  }
  return out.str();
}

Instance parse_scen(const std::string& text, const GridMap& grid, int m, Semantics semantics) {
  auto lines = split_lines(text);
  if (lines.empty() || tokenize(lines[0]).empty() || tokenize(lines[0])[0] != "version")
    throw MalformedHeader("missing scen version line");
  GridGraph gg = build_graph_from_grid(grid);
  std::vector<Agent> agents;
  for (size_t k = 1; k < lines.size() && static_cast<int>(agents.size()) < m; ++k) {
    if (lines[k].empty()) continue;
    auto tokens = tokenize(lines[k]);
    if (tokens.size() < 9) throw BadEntry("scen entry has " + std::to_string(tokens.size()) +
                                          " fields: " + lines[k]);
    int sx, sy, gx, gy;
    try {
      sx = std::stoi(tokens[4]);
      sy = std::stoi(tokens[5]);
      gx = std::stoi(tokens[6]);
      gy = std::stoi(tokens[7]);
    } catch (const std::exception&) {
      throw BadEntry("non-numeric scen coordinates: " + lines[k]);
    }
    for (auto [x, y] : {std::pair{sx, sy}, std::pair{gx, gy}}) {
      if (!grid.in_bounds(x, y)) throw BadEntry("scen coordinate out of bounds: " + lines[k]);
      if (grid.is_blocked(x, y)) throw BadEntry("scen endpoint on blocked cell: " + lines[k]);
    }
    Agent a;
    a.index = static_cast<int>(agents.size());
    a.start = gg.cell_to_vertex[sy * grid.width + sx];
    a.target = gg.cell_to_vertex[gy * grid.width + gx];
    agents.push_back(a);
  }
  if (static_cast<int>(agents.size()) < m)
    throw BadEntry("scenario has fewer than " + std::to_string(m) + " entries");
  return grid_instance(gg, std::move(agents), semantics);
}

std::string serialize_scen(const GridMap& grid, const Instance& instance,
                           const std::string& map_name) {
  GridGraph gg = build_graph_from_grid(grid);
  std::ostringstream out;
  out << "version 1\n";
  for (const Agent& a : instance.agents) {
    auto [sx, sy] = gg.vertex_to_cell[a.start];
    auto [gx, gy] = gg.vertex_to_cell[a.target];
    out << "0\t" << map_name << '\t' << grid.width << '\t' << grid.height << '\t' << sx << '\t'
        << sy << '\t' << gx << '\t' << gy << "\t0\n";
  }
  return out.str();
}

Instance parse_graph_fixture(const std::string& text) {
  std::map<std::string, VertexId> labels;
  std::vector<std::string> label_list;
  std::vector<std::pair<VertexId, VertexId>> edges;
  std::vector<Agent> agents;
  Semantics semantics = Semantics::StayAtTarget;

  auto lookup = [&](const std::string& label) -> VertexId {
    auto it = labels.find(label);
    if (it == labels.end()) throw BadEntry("undeclared vertex label: " + label);
    return it->second;
  };

  for (const std::string& line : split_lines(text)) {
    auto tokens = tokenize(line);
    if (tokens.empty() || tokens[0][0] == '#') continue;
    if (tokens[0] == "v" && tokens.size() == 2) {
      if (!labels.emplace(tokens[1], static_cast<VertexId>(label_list.size())).second)
        throw BadEntry("duplicate vertex label: " + tokens[1]);
      label_list.push_back(tokens[1]);
    } else if (tokens[0] == "e" && tokens.size() == 3) {
      edges.emplace_back(lookup(tokens[1]), lookup(tokens[2]));
    } else if (tokens[0] == "a" && tokens.size() == 3) {
      Agent a;
      a.index = static_cast<int>(agents.size());
      a.start = lookup(tokens[1]);
      a.target = lookup(tokens[2]);
      agents.push_back(a);
    } else if (tokens[0] == "semantics" && tokens.size() == 2) {
      if (tokens[1] == "stay")
        semantics = Semantics::StayAtTarget;
      else if (tokens[1] == "disappear")
        semantics = Semantics::DisappearAtTarget;
      else
        throw BadEntry("unknown semantics: " + tokens[1]);
    } else {
      throw BadEntry("unparseable fixture line: " + line);
    }
  }
  Instance instance;
  instance.graph = Graph(static_cast<int>(label_list.size()), std::move(edges));
  instance.agents = std::move(agents);
  instance.semantics = semantics;
  instance.vertex_labels = std::move(label_list);
  instance.validate();
  return instance;
}

std::string serialize_graph_fixture(const Instance& instance) {
  std::ostringstream out;
  out << "semantics "
      << (instance.semantics == Semantics::StayAtTarget ? "stay" : "disappear") << '\n';
  for (int v = 0; v < instance.graph.vertex_count(); ++v) out << "v " << instance.label(v) << '\n';
  for (int v = 0; v < instance.graph.vertex_count(); ++v)
    for (VertexId w : instance.graph.neighbors(v))
      if (v < w) out << "e " << instance.label(v) << ' ' << instance.label(w) << '\n';
  for (const Agent& a : instance.agents)
    out << "a " << instance.label(a.start) << ' ' << instance.label(a.target) << '\n';
  return out.str();
}

std::string serialize_solution(const Instance& instance, const Plan& plan) {
  std::ostringstream out;
  for (size_t i = 0; i < plan.size(); ++i) {
    out << "agent " << (i + 1) << ':';
    for (VertexId v : plan[i].vertices) out << ' ' << instance.label(v);
    out << '\n';
  }
  return out.str();
}

Plan parse_solution(const Instance& instance, const std::string& text) {
  std::map<std::string, VertexId> by_label;
  for (int v = 0; v < instance.graph.vertex_count(); ++v) by_label[instance.label(v)] = v;
  Plan plan(instance.num_agents());
  for (const std::string& line : split_lines(text)) {
    auto tokens = tokenize(line);
    if (tokens.empty()) continue;
    if (tokens.size() < 3 || tokens[0] != "agent" || tokens[1].back() != ':')
      throw BadEntry("unparseable solution line: " + line);
    int index = std::stoi(tokens[1].substr(0, tokens[1].size() - 1)) - 1;
    if (index < 0 || index >= instance.num_agents())
      throw BadEntry("agent index out of range: " + line);
    Path path;
    for (size_t k = 2; k < tokens.size(); ++k) {
      auto it = by_label.find(tokens[k]);
      if (it == by_label.end()) throw BadEntry("unknown vertex in solution: " + tokens[k]);
      path.vertices.push_back(it->second);
    }
    plan[index] = std::move(path);
  }
  for (int i = 0; i < instance.num_agents(); ++i)
    if (plan[i].empty())
      throw BadEntry("no path for agent " + std::to_string(i + 1));
  return plan;
}

GeneratedInstance generate_random_instance_with_grid(int width, int height, double obstacle_pct,
                                                     int m, uint64_t seed, Semantics semantics,
                                                     bool well_formed) {
  if (width <= 0 || height <= 0 || m < 0 || obstacle_pct < 0 || obstacle_pct >= 1)
    throw InfeasibleParameters("bad generator parameters");
  const int cells = width * height;
  const int n_blocked = static_cast<int>(obstacle_pct * cells);
  if (cells - n_blocked < m) throw InfeasibleParameters("not enough unblocked cells for agents");

  constexpr int kMapAttempts = 100;
  constexpr int kEndpointAttempts = 500;
  for (int attempt = 0; attempt < kMapAttempts; ++attempt) {
    SplitMix64 rng(derive_seed(seed, static_cast<uint64_t>(attempt)));
    GridMap grid{width, height, std::vector<char>(cells, 0)};
    std::vector<int> cell_ids(cells);
    std::iota(cell_ids.begin(), cell_ids.end(), 0);
    rng.shuffle(cell_ids);
    for (int k = 0; k < n_blocked; ++k) grid.blocked[cell_ids[k]] = 1;

    GridGraph gg;
    try {
      gg = build_graph_from_grid(grid);
    } catch (const DisconnectedMap&) {
      continue;
    }
    const int free = gg.graph.vertex_count();
    if (free < m) continue;

    std::vector<VertexId> vertices(free);
    std::iota(vertices.begin(), vertices.end(), 0);
    for (int ep_try = 0; ep_try < kEndpointAttempts; ++ep_try) {
      auto starts = vertices;
      rng.shuffle(starts);
      auto targets = vertices;
      rng.shuffle(targets);
      std::vector<Agent> agents(m);
      for (int i = 0; i < m; ++i) agents[i] = {i, starts[i], targets[i]};
      Instance candidate = grid_instance(gg, std::move(agents), semantics);
      if (well_formed && !wellformed_check(candidate)) continue;
      return {std::move(candidate), std::move(grid)};
    }
  }
  throw InfeasibleParameters("could not generate a feasible instance");
}

Instance generate_random_instance(int width, int height, double obstacle_pct, int m,
                                  uint64_t seed, Semantics semantics) {
  return generate_random_instance_with_grid(width, height, obstacle_pct, m, seed, semantics, false)
      .instance;
}

Instance generate_wellformed_instance(int width, int height, double obstacle_pct, int m,
                                      uint64_t seed, Semantics semantics) {
  return generate_random_instance_with_grid(width, height, obstacle_pct, m, seed, semantics, true)
      .instance;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open file: " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write file: " + path);
  out << content;
}

}  // namespace mapf

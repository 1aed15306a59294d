#include "mapf/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "mapf/cbs.hpp"
#include "mapf/io.hpp"
#include "mapf/pbs.hpp"
#include "mapf/rng.hpp"

namespace mapf {

namespace {

const std::set<std::string> kAlgorithms = {"cbs", "cbswp", "pbs", "fix", "lh", "sh", "rnd"};

std::vector<std::string> split_csv(const std::string& value) {
  std::vector<std::string> out;
  std::istringstream in(value);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

std::string result_name(SolveResult result) {
  switch (result) {
    case SolveResult::Solved: return "solved";
    case SolveResult::NoSolution: return "no_solution";
    case SolveResult::Timeout: return "timeout";
  }
  return "?";
}

std::string semantics_name(Semantics semantics) {
  return semantics == Semantics::StayAtTarget ? "stay" : "disappear";
}

int worker_thread_count() {
  if (const char* env = std::getenv("MAPF_THREADS")) {
    int n = std::atoi(env);
    if (n > 0) return n;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

BenchConfig parse_bench_config(const std::string& text) {
  BenchConfig config;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto is_space = [](char c) { return c == ' ' || c == '\t'; };
    line.erase(std::remove_if(line.begin(), line.end(), is_space), line.end());
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error("config line " + std::to_string(line_no) + " is not key=value");
    std::string key = line.substr(0, eq);
    std::string value = line.substr(eq + 1);
    try {
      if (key == "algos" || key == "algorithms") {
        config.algorithms = split_csv(value);
      } else if (key == "map") {
        config.map_file = value;
      } else if (key == "scen") {
        config.scen_file = value;
      } else if (key == "width") {
        config.width = std::stoi(value);
      } else if (key == "height") {
        config.height = std::stoi(value);
      } else if (key == "obstacles") {
        config.obstacle_pct = std::stod(value);
      } else if (key == "well_formed") {
        config.well_formed = value == "true" || value == "1";
      } else if (key == "agents") {
        config.agent_counts.clear();
        for (const auto& a : split_csv(value)) config.agent_counts.push_back(std::stoi(a));
      } else if (key == "seeds") {
        config.seeds = std::stoi(value);
      } else if (key == "seed_base") {
        config.seed_base = std::stoull(value);
      } else if (key == "timeout") {
        config.timeout = std::stod(value);
      } else if (key == "semantics") {
        if (value == "stay")
          config.semantics = Semantics::StayAtTarget;
        else if (value == "disappear")
          config.semantics = Semantics::DisappearAtTarget;
        else
          throw Error("unknown semantics: " + value);
      } else if (key == "rnd_runs") {
        config.rnd_runs = std::stoi(value);
      } else if (key == "map_name") {
        config.map_name = value;
      } else {
        throw Error("unknown config key: " + key);
      }
    } catch (const std::invalid_argument&) {
      throw Error("bad value for " + key + ": " + value);
    }
  }
  if (config.algorithms.empty()) throw Error("config names no algorithms");
  for (const auto& a : config.algorithms)
    if (!kAlgorithms.count(a)) throw Error("unknown algorithm: " + a);
  if (config.map_file.empty() && (config.width <= 0 || config.height <= 0))
    throw Error("config needs either map= or width=/height=");
  if (config.agent_counts.empty()) throw Error("config names no agent counts");
  if (config.obstacle_pct < 0 || config.obstacle_pct >= 100)
    throw Error("obstacles must be a percentage in [0, 100)");
  if (config.map_name.empty())
    config.map_name = config.map_file.empty() ? "gen" : config.map_file;
  return config;
}

SolveOutcome run_algorithm(const std::string& algorithm, const Instance& instance,
                           double timeout, uint64_t seed, int rnd_runs,
                           const std::vector<int>* fixed_order) {
  if (algorithm == "cbs") return solve_cbs(instance, CbsMode::Plain, timeout);
  if (algorithm == "cbswp") return solve_cbs(instance, CbsMode::WithPriorities, timeout);
  if (algorithm == "pbs")
    return solve_pbs(instance, PriorityOrdering(instance.num_agents()), timeout);
  if (algorithm == "rnd") return solve_rnd(instance, rnd_runs, timeout, seed);

  OrderingStrategy strategy;
  if (algorithm == "fix") {
    strategy.kind = OrderingStrategyKind::Fixed;
    if (fixed_order) strategy.fixed_order = *fixed_order;
  } else if (algorithm == "lh") {
    strategy.kind = OrderingStrategyKind::LongestFirst;
  } else if (algorithm == "sh") {
    strategy.kind = OrderingStrategyKind::ShortestFirst;
  } else {
    throw Error("unknown algorithm: " + algorithm);
  }
  return solve_pbs(instance, build_total_ordering(instance, strategy), timeout);
}

std::vector<RunRecord> run_experiment(const BenchConfig& config) {
  struct Task {
    std::string algorithm;
    int m = 0;
    uint64_t seed = 0;
  };
  std::vector<Task> tasks;
  for (const auto& algo : config.algorithms)
    for (int m : config.agent_counts)
      for (int s = 0; s < config.seeds; ++s)
        tasks.push_back({algo, m, derive_seed(config.seed_base, static_cast<uint64_t>(s))});

  // Map-based runs parse once up front.
  std::optional<GridMap> grid;
  std::optional<std::string> scen_text;
  if (!config.map_file.empty()) {
    grid = parse_map(read_file(config.map_file));
    if (!config.scen_file.empty()) scen_text = read_file(config.scen_file);
  }

  auto build_instance = [&](const Task& task) -> Instance {
    if (grid) {
      if (!scen_text) throw Error("map-based config needs scen=");
      return parse_scen(*scen_text, *grid, task.m, config.semantics);
    }
    uint64_t instance_seed = derive_seed(task.seed, static_cast<uint64_t>(task.m));
    return generate_random_instance_with_grid(config.width, config.height,
                                              config.obstacle_pct / 100.0, task.m, instance_seed,
                                              config.semantics, config.well_formed)
        .instance;
  };

  std::vector<RunRecord> records(tasks.size());
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      size_t k = next.fetch_add(1);
      if (k >= tasks.size()) return;
      const Task& task = tasks[k];
      RunRecord rec;
      rec.algorithm = task.algorithm;
      rec.map_name = config.map_name;
      rec.seed = task.seed;
      rec.m = task.m;
      rec.obstacle_pct = config.obstacle_pct;
      rec.semantics = config.semantics;
      try {
        Instance instance = build_instance(task);
        SolveOutcome out =
            run_algorithm(task.algorithm, instance, config.timeout, task.seed, config.rnd_runs);
        rec.result = out.result;
        rec.runtime_seconds = out.stats.runtime_seconds;
        rec.hl_expansions = out.stats.high_level_expansions;
        rec.ll_expansions = out.stats.low_level_expansions;
        if (out.result == SolveResult::Solved) {
          rec.flowtime = flowtime(*out.plan);
          rec.makespan = makespan(*out.plan);
        }
      } catch (const Error&) {
        rec.result = SolveResult::NoSolution;  // per-run failures never abort the sweep
      }
      records[k] = std::move(rec);
    }
  };

  int n_threads = std::min<int>(worker_thread_count(), static_cast<int>(tasks.size()));
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (int t = 0; t < n_threads; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }
  return records;
}

void write_csv(std::ostream& out, const std::vector<RunRecord>& records) {
  out << "algorithm,map,seed,m,obstacle_pct,semantics,result,runtime_s,flowtime,makespan,"
         "hl_expansions,ll_expansions\n";
  for (const RunRecord& r : records) {
    out << r.algorithm << ',' << r.map_name << ',' << r.seed << ',' << r.m << ','
        << r.obstacle_pct << ',' << semantics_name(r.semantics) << ',' << result_name(r.result)
        << ',' << std::fixed << std::setprecision(4) << r.runtime_seconds << ','
        << (r.flowtime ? std::to_string(*r.flowtime) : "") << ','
        << (r.makespan ? std::to_string(*r.makespan) : "") << ',' << r.hl_expansions << ','
        << r.ll_expansions << '\n';
    out.unsetf(std::ios::fixed);
  }
}

std::vector<AggregateRow> aggregate(const std::vector<RunRecord>& records,
                                    const std::vector<std::string>& comparison_set) {
  // Instances are keyed by (map, seed, m, obstacles, semantics).
  using InstanceKey = std::tuple<std::string, uint64_t, int, double, int>;
  auto key_of = [](const RunRecord& r) {
    return InstanceKey{r.map_name, r.seed, r.m, r.obstacle_pct, static_cast<int>(r.semantics)};
  };

  // Commonly-solved instance keys: solved by every algorithm of the set.
  std::map<InstanceKey, std::set<std::string>> solved_by;
  for (const RunRecord& r : records)
    if (r.result == SolveResult::Solved) solved_by[key_of(r)].insert(r.algorithm);
  std::set<InstanceKey> common;
  for (const auto& [key, algos] : solved_by) {
    bool all = true;
    for (const auto& a : comparison_set)
      if (!algos.count(a)) all = false;
    if (all) common.insert(key);
  }

  std::map<std::pair<std::string, int>, std::vector<const RunRecord*>> groups;
  std::vector<std::pair<std::string, int>> group_order;
  for (const RunRecord& r : records) {
    auto g = std::make_pair(r.algorithm, r.m);
    if (!groups.count(g)) group_order.push_back(g);
    groups[g].push_back(&r);
  }
  std::sort(group_order.begin(), group_order.end());

  std::vector<AggregateRow> rows;
  for (const auto& g : group_order) {
    const auto& recs = groups[g];
    AggregateRow row;
    row.algorithm = g.first;
    row.m = g.second;
    int solved = 0, in_common = 0;
    double sum_ft = 0, sum_ll = 0, sum_hl = 0, sum_rt = 0;
    for (const RunRecord* r : recs) {
      if (r->result == SolveResult::Solved) ++solved;
      sum_rt += r->runtime_seconds;
      if (common.count(key_of(*r))) {
        ++in_common;
        if (r->flowtime) sum_ft += static_cast<double>(*r->flowtime);
        sum_ll += static_cast<double>(r->ll_expansions);
        sum_hl += static_cast<double>(r->hl_expansions);
      }
    }
    row.success_rate = recs.empty() ? 0.0 : static_cast<double>(solved) / recs.size();
    row.commonly_solved = in_common;
    if (in_common > 0) {
      row.mean_flowtime = sum_ft / in_common;
      row.mean_ll_expansions = sum_ll / in_common;
      row.mean_hl_expansions = sum_hl / in_common;
    }
    row.mean_runtime = recs.empty() ? 0.0 : sum_rt / recs.size();
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace mapf

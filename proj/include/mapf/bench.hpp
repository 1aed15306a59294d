#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "mapf/instance.hpp"
#include "mapf/stats.hpp"

namespace mapf {

// Experiment sweep description, parsed from a line-oriented key=value file.
struct BenchConfig {
  std::vector<std::string> algorithms;  // of: cbs cbswp pbs fix lh sh rnd

  // Instance source: either a map (+ scen) pair, or the generator.
  std::string map_file;
  std::string scen_file;
  int width = 0;
  int height = 0;
  double obstacle_pct = 0.0;  // percent, 0..100
  bool well_formed = false;

  std::vector<int> agent_counts;
  int seeds = 1;           // number of generated instances per agent count
  uint64_t seed_base = 1;
  double timeout = 60.0;
  Semantics semantics = Semantics::StayAtTarget;
  int rnd_runs = 10;
  std::string map_name;  // label for the CSV (defaults to map file or "gen")
};

BenchConfig parse_bench_config(const std::string& text);

struct RunRecord {
  std::string algorithm;
  std::string map_name;
  uint64_t seed = 0;
  int m = 0;
  double obstacle_pct = 0.0;
  Semantics semantics = Semantics::StayAtTarget;
  SolveResult result = SolveResult::NoSolution;
  double runtime_seconds = 0.0;
  std::optional<long long> flowtime;  // present iff Solved
  std::optional<long long> makespan;
  long long hl_expansions = 0;
  long long ll_expansions = 0;
};

// Dispatches one of the algorithm ids on an instance. `seed` feeds RND;
// `fixed_order` (1-based in the CLI, 0-based here) overrides FIX's order.
SolveOutcome run_algorithm(const std::string& algorithm, const Instance& instance,
                           double timeout, uint64_t seed, int rnd_runs,
                           const std::vector<int>* fixed_order = nullptr);

// One record per (algorithm, instance), in deterministic config order.
// Worker threads come from MAPF_THREADS (default: hardware concurrency).
std::vector<RunRecord> run_experiment(const BenchConfig& config);

void write_csv(std::ostream& out, const std::vector<RunRecord>& records);

struct AggregateRow {
  std::string algorithm;
  int m = 0;
  double success_rate = 0.0;            // over all instances of this (algorithm, m)
  int commonly_solved = 0;              // instances solved by every compared algorithm
  std::optional<double> mean_flowtime;  // over the commonly-solved set
  std::optional<double> mean_ll_expansions;
  std::optional<double> mean_hl_expansions;
  double mean_runtime = 0.0;  // timeouts averaged in at full value
};

std::vector<AggregateRow> aggregate(const std::vector<RunRecord>& records,
                                    const std::vector<std::string>& comparison_set);

std::string result_name(SolveResult result);
std::string semantics_name(Semantics semantics);

int worker_thread_count();

}  // namespace mapf

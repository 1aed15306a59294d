#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mapf/bench.hpp"
#include "mapf/cbs.hpp"
#include "mapf/io.hpp"
#include "mapf/pbs.hpp"

namespace {

using namespace mapf;

struct InstanceArgs {
  std::string map_file;
  std::string scen_file;
  std::string fixture_file;
  int agents = 0;
  std::string semantics;  // empty: stay, or whatever the fixture says
};

void add_instance_options(CLI::App* cmd, InstanceArgs& args) {
  cmd->add_option("--map", args.map_file, "movingai .map file");
  cmd->add_option("--scen", args.scen_file, "movingai .scen file (version 1)");
  cmd->add_option("--fixture", args.fixture_file, "explicit graph fixture file");
  cmd->add_option("--agents", args.agents, "number of agents to take from the scenario");
  cmd->add_option("--semantics", args.semantics, "stay|disappear")
      ->check(CLI::IsMember({"stay", "disappear"}));
}

Instance load_instance(const InstanceArgs& args) {
  if (!args.fixture_file.empty()) {
    Instance instance = parse_graph_fixture(read_file(args.fixture_file));
    if (!args.semantics.empty())
      instance.semantics = args.semantics == "disappear" ? Semantics::DisappearAtTarget
                                                         : Semantics::StayAtTarget;
    return instance;
  }
  if (args.map_file.empty() || args.scen_file.empty())
    throw Error("need --fixture or both --map and --scen");
  GridMap grid = parse_map(read_file(args.map_file));
  Semantics semantics =
      args.semantics == "disappear" ? Semantics::DisappearAtTarget : Semantics::StayAtTarget;
  return parse_scen(read_file(args.scen_file), grid, args.agents, semantics);
}

std::vector<int> parse_order(const std::string& text, int m) {
  std::vector<int> order;
  std::istringstream in(text);
  std::string tok;
  while (std::getline(in, tok, ',')) order.push_back(std::stoi(tok) - 1);
  if (static_cast<int>(order.size()) != m)
    throw Error("--order must list all " + std::to_string(m) + " agents");
  return order;
}

int cmd_solve(const InstanceArgs& iargs, const std::string& algo, double timeout,
              const std::string& order_text, uint64_t seed, int rnd_runs,
              const std::string& solution_file) {
  Instance instance = load_instance(iargs);
  std::optional<std::vector<int>> order;
  if (!order_text.empty()) order = parse_order(order_text, instance.num_agents());

  SolveOutcome out = run_algorithm(algo, instance, timeout, seed, rnd_runs,
                                   order ? &*order : nullptr);

  std::cout << "result: " << result_name(out.result) << "\n"
            << "runtime_s: " << out.stats.runtime_seconds << "\n"
            << "hl_expansions: " << out.stats.high_level_expansions << "\n"
            << "ll_expansions: " << out.stats.low_level_expansions << "\n";
  if (out.result == SolveResult::Solved) {
    std::cout << "flowtime: " << flowtime(*out.plan) << "\n"
              << "makespan: " << makespan(*out.plan) << "\n";
    if (out.final_ordering) {
      std::cout << "ordering:";
      for (int i = 0; i < instance.num_agents(); ++i)
        for (int j = 0; j < instance.num_agents(); ++j)
          if (out.final_ordering->precedes(i, j))
            std::cout << ' ' << (i + 1) << '<' << (j + 1);
      std::cout << "\n";
    }
    std::string text = serialize_solution(instance, *out.plan);
    if (!solution_file.empty())
      write_file(solution_file, text);
    else
      std::cout << text;
  }
  switch (out.result) {
    case SolveResult::Solved: return 0;
    case SolveResult::NoSolution: return 2;
    case SolveResult::Timeout: return 3;
  }
  return 1;
}

int cmd_bench(const std::string& config_file, const std::string& out_file) {
  BenchConfig config = parse_bench_config(read_file(config_file));
  auto records = run_experiment(config);
  std::ostringstream csv;
  write_csv(csv, records);
  if (out_file.empty())
    std::cout << csv.str();
  else
    write_file(out_file, csv.str());

  auto rows = aggregate(records, config.algorithms);
  std::cerr << "algorithm  m  success  common  mean_flowtime  mean_ll\n";
  for (const auto& row : rows) {
    std::cerr << row.algorithm << "  " << row.m << "  " << row.success_rate << "  "
              << row.commonly_solved << "  "
              << (row.mean_flowtime ? std::to_string(*row.mean_flowtime) : "-") << "  "
              << (row.mean_ll_expansions ? std::to_string(*row.mean_ll_expansions) : "-")
              << "\n";
  }
  return 0;
}

int cmd_verify(const InstanceArgs& iargs, const std::string& solution_file) {
  Instance instance = load_instance(iargs);
  Plan plan = parse_solution(instance, read_file(solution_file));
  auto violations = validate_solution(instance, plan);
  if (violations.empty()) {
    std::cout << "ok\n";
    return 0;
  }
  for (const auto& v : violations) std::cout << "violation: " << v.message << "\n";
  return 2;
}

int cmd_gen(int width, int height, double obstacles, int agents, uint64_t seed,
            bool well_formed, const std::string& semantics, const std::string& out_prefix) {
  Semantics sem = semantics == "disappear" ? Semantics::DisappearAtTarget
                                           : Semantics::StayAtTarget;
  auto generated = generate_random_instance_with_grid(width, height, obstacles / 100.0, agents,
                                                      seed, sem, well_formed);
  std::string map_name = out_prefix + ".map";
  write_file(map_name, serialize_map(generated.grid));
  write_file(out_prefix + ".scen",
             serialize_scen(generated.grid, generated.instance, map_name));
  std::cout << "wrote " << map_name << " and " << out_prefix << ".scen\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MAPF solver suite: CBS, CBSw/P, PBS and prioritized baselines"};
  app.require_subcommand(1);

  InstanceArgs solve_args;
  std::string algo = "pbs", order_text, solution_file;
  double timeout = 60.0;
  uint64_t seed = 1;
  int rnd_runs = 10;
  auto* solve = app.add_subcommand("solve", "solve a single instance");
  add_instance_options(solve, solve_args);
  solve->add_option("--algo", algo, "cbs|cbswp|pbs|fix|lh|sh|rnd")
      ->check(CLI::IsMember({"cbs", "cbswp", "pbs", "fix", "lh", "sh", "rnd"}));
  solve->add_option("--timeout", timeout, "wall-clock limit in seconds");
  solve->add_option("--order", order_text, "total priority order for fix, e.g. 2,1 (1-based)");
  solve->add_option("--seed", seed, "seed for rnd");
  solve->add_option("--rnd-runs", rnd_runs, "number of random restarts for rnd");
  solve->add_option("--solution", solution_file, "write the solution to this file");

  std::string config_file, csv_out;
  auto* bench = app.add_subcommand("bench", "run an experiment sweep");
  bench->add_option("--config", config_file, "key=value config file")->required();
  bench->add_option("--out", csv_out, "CSV output file (stdout if omitted)");

  InstanceArgs verify_args;
  std::string verify_solution;
  auto* verify = app.add_subcommand("verify", "validate a solution file");
  add_instance_options(verify, verify_args);
  verify->add_option("--solution", verify_solution, "solution file to check")->required();

  int gen_width = 0, gen_height = 0, gen_agents = 0;
  double gen_obstacles = 0.0;
  uint64_t gen_seed = 1;
  bool gen_wf = false;
  std::string gen_semantics = "stay", gen_prefix = "instance";
  auto* gen = app.add_subcommand("gen", "generate a random instance (map + scen)");
  gen->add_option("--width", gen_width)->required();
  gen->add_option("--height", gen_height)->required();
  gen->add_option("--obstacles", gen_obstacles, "obstacle percentage, 0..100");
  gen->add_option("--agents", gen_agents)->required();
  gen->add_option("--seed", gen_seed);
  gen->add_flag("--well-formed", gen_wf, "resample endpoints until well-formed");
  gen->add_option("--semantics", gen_semantics)->check(CLI::IsMember({"stay", "disappear"}));
  gen->add_option("--out", gen_prefix, "output file prefix");

  try {
    app.parse(argc, argv);
    if (solve->parsed())
      return cmd_solve(solve_args, algo, timeout, order_text, seed, rnd_runs, solution_file);
    if (bench->parsed()) return cmd_bench(config_file, csv_out);
    if (verify->parsed()) return cmd_verify(verify_args, verify_solution);
    if (gen->parsed())
      return cmd_gen(gen_width, gen_height, gen_obstacles, gen_agents, gen_seed, gen_wf,
                     gen_semantics, gen_prefix);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

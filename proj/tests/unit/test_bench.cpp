#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "mapf/bench.hpp"

using namespace mapf;

namespace {

const char* kSmallConfig =
    "# tiny sweep\n"
    "algos = pbs, fix\n"
    "width = 8\n"
    "height = 8\n"
    "obstacles = 10\n"
    "well_formed = true\n"
    "agents = 4\n"
    "seeds = 3\n"
    "seed_base = 11\n"
    "timeout = 10\n";

// CSV with the runtime column blanked, for determinism comparisons.
std::string stable_csv(const std::vector<RunRecord>& records) {
  std::ostringstream raw;
  write_csv(raw, records);
  std::istringstream in(raw.str());
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cols;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) cols.push_back(cell);
    if (cols.size() > 7 && cols[7] != "runtime_s") cols[7] = "";
    for (size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
    out << "\n";
  }
  return out.str();
}

RunRecord record(const std::string& algo, uint64_t seed, int m, SolveResult result,
                 long long ft = 0) {
  RunRecord r;
  r.algorithm = algo;
  r.map_name = "gen";
  r.seed = seed;
  r.m = m;
  r.result = result;
  if (result == SolveResult::Solved) {
    r.flowtime = ft;
    r.makespan = ft;
  }
  return r;
}

}  // namespace

TEST_CASE("config parsing") {
  SUBCASE("full config") {
    BenchConfig c = parse_bench_config(kSmallConfig);
    CHECK(c.algorithms == std::vector<std::string>{"pbs", "fix"});
    CHECK(c.width == 8);
    CHECK(c.obstacle_pct == 10.0);
    CHECK(c.well_formed);
    CHECK(c.agent_counts == std::vector<int>{4});
    CHECK(c.seeds == 3);
    CHECK(c.seed_base == 11);
    CHECK(c.timeout == 10.0);
    CHECK(c.map_name == "gen");
  }
  SUBCASE("rejects unknown keys, algorithms and missing fields") {
    CHECK_THROWS_AS(parse_bench_config("algos=pbs\nwidth=4\nheight=4\nagents=2\nwat=1\n"), Error);
    CHECK_THROWS_AS(parse_bench_config("algos=dijkstra\nwidth=4\nheight=4\nagents=2\n"), Error);
    CHECK_THROWS_AS(parse_bench_config("width=4\nheight=4\nagents=2\n"), Error);
    CHECK_THROWS_AS(parse_bench_config("algos=pbs\nagents=2\n"), Error);
    CHECK_THROWS_AS(parse_bench_config("algos=pbs\nwidth=4\nheight=4\n"), Error);
    CHECK_THROWS_AS(parse_bench_config("algos=pbs\nwidth=4\nheight=4\nagents=oops\n"), Error);
  }
}

TEST_CASE("experiment runs") {
  SUBCASE("one algorithm, one instance, one record") {
    BenchConfig c = parse_bench_config("algos=pbs\nwidth=6\nheight=6\nagents=3\nseeds=1\n");
    auto records = run_experiment(c);
    REQUIRE(records.size() == 1);
    CHECK(records[0].algorithm == "pbs");
    CHECK(records[0].result == SolveResult::Solved);
    CHECK(records[0].flowtime.has_value());
  }
  SUBCASE("rerun is identical apart from runtimes") {
    BenchConfig c = parse_bench_config(kSmallConfig);
    auto a = run_experiment(c);
    auto b = run_experiment(c);
    CHECK(a.size() == 2 * 3);
    CHECK(stable_csv(a) == stable_csv(b));
  }
  SUBCASE("csv shape") {
    BenchConfig c = parse_bench_config("algos=pbs\nwidth=6\nheight=6\nagents=3\nseeds=1\n");
    std::ostringstream out;
    write_csv(out, run_experiment(c));
    std::istringstream in(out.str());
    std::string header;
    std::getline(in, header);
    CHECK(header ==
          "algorithm,map,seed,m,obstacle_pct,semantics,result,runtime_s,flowtime,makespan,"
          "hl_expansions,ll_expansions");
  }
}

TEST_CASE("aggregation") {
  SUBCASE("means restricted to commonly solved instances") {
    std::vector<RunRecord> records{
        record("pbs", 1, 2, SolveResult::Solved, 10),
        record("pbs", 2, 2, SolveResult::Solved, 20),
        record("fix", 1, 2, SolveResult::Solved, 12),
        record("fix", 2, 2, SolveResult::NoSolution),
    };
    auto rows = aggregate(records, {"pbs", "fix"});
    REQUIRE(rows.size() == 2);
    // Only seed 1 is solved by both.
    for (const auto& row : rows) {
      CHECK(row.commonly_solved == 1);
      REQUIRE(row.mean_flowtime.has_value());
    }
    CHECK(rows[0].algorithm == "fix");
    CHECK(*rows[0].mean_flowtime == 12.0);
    CHECK(rows[0].success_rate == 0.5);
    CHECK(rows[1].algorithm == "pbs");
    CHECK(*rows[1].mean_flowtime == 10.0);
    CHECK(rows[1].success_rate == 1.0);
  }
  SUBCASE("disjoint solved sets leave means absent") {
    std::vector<RunRecord> records{
        record("pbs", 1, 2, SolveResult::Solved, 10),
        record("pbs", 2, 2, SolveResult::NoSolution),
        record("fix", 1, 2, SolveResult::NoSolution),
        record("fix", 2, 2, SolveResult::Solved, 9),
    };
    auto rows = aggregate(records, {"pbs", "fix"});
    for (const auto& row : rows) {
      CHECK(row.commonly_solved == 0);
      CHECK(!row.mean_flowtime.has_value());
      CHECK(row.success_rate == 0.5);
    }
  }
  SUBCASE("single algorithm compares against itself") {
    std::vector<RunRecord> records{
        record("pbs", 1, 2, SolveResult::Solved, 10),
        record("pbs", 2, 2, SolveResult::Solved, 30),
    };
    auto rows = aggregate(records, {"pbs"});
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].commonly_solved == 2);
    CHECK(*rows[0].mean_flowtime == 20.0);
  }
  SUBCASE("record order does not matter") {
    std::vector<RunRecord> records{
        record("pbs", 1, 2, SolveResult::Solved, 10),
        record("fix", 1, 2, SolveResult::Solved, 12),
        record("pbs", 2, 2, SolveResult::Solved, 20),
    };
    auto rows = aggregate(records, {"pbs", "fix"});
    std::swap(records[0], records[2]);
    auto rows2 = aggregate(records, {"pbs", "fix"});
    REQUIRE(rows.size() == rows2.size());
    for (size_t i = 0; i < rows.size(); ++i) {
      CHECK(rows[i].algorithm == rows2[i].algorithm);
      CHECK(rows[i].mean_flowtime == rows2[i].mean_flowtime);
      CHECK(rows[i].success_rate == rows2[i].success_rate);
    }
  }
}

#pragma once

#include <chrono>
#include <optional>

#include "mapf/ordering.hpp"
#include "mapf/plan.hpp"

namespace mapf {

enum class SolveResult { Solved, NoSolution, Timeout };

struct SolverStats {
  double runtime_seconds = 0.0;
  long long high_level_expansions = 0;
  long long low_level_expansions = 0;
  SolveResult result = SolveResult::NoSolution;
  // PBS branch diagnostics (theory bound checks).
  int max_branch_pairs = 0;
  bool duplicate_pair_added = false;
};

struct SolveOutcome {
  SolveResult result = SolveResult::NoSolution;
  std::optional<Plan> plan;
  std::optional<PriorityOrdering> final_ordering;
  SolverStats stats;
};

struct SearchBudget {
  long long node_expansion_limit = 1'000'000'000;  // low-level expansions per solve
  TimeStep time_horizon = 1'000'000;               // absolute cap on any timestep
};

// Cooperative wall-clock deadline. Low-level searches poll it every
// `kCheckInterval` expansions; exhausting it raises TimeoutError.
class Deadline {
 public:
  static constexpr long long kCheckInterval = 10'000;

  Deadline() = default;  // no limit
  explicit Deadline(double seconds)
      : limited_(seconds >= 0),
        end_(std::chrono::steady_clock::now() +
             std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                 std::chrono::duration<double>(seconds < 0 ? 0 : seconds))) {}

  bool expired() const {
    return limited_ && std::chrono::steady_clock::now() >= end_;
  }

 private:
  bool limited_ = false;
  std::chrono::steady_clock::time_point end_{};
};

class TimeoutError : public Error {
 public:
  TimeoutError() : Error("deadline exceeded") {}
};

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace mapf

#pragma once

#include "mapf/lowlevel.hpp"
#include "mapf/stats.hpp"

namespace mapf {

enum class CbsMode { Plain, WithPriorities };

// Best-first high-level search over the constraint tree. Plain mode is
// standard flowtime-optimal CBS; WithPriorities additionally threads a
// priority ordering through the tree and suppresses children that would
// reverse an existing pair.
SolveOutcome solve_cbs(const Instance& instance, CbsMode mode, double timeout_seconds,
                       const SearchBudget& budget = SearchBudget{});

}  // namespace mapf

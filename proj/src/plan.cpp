#include "mapf/plan.hpp"

#include <algorithm>

namespace mapf {

long long flowtime(const Plan& plan) {
  long long sum = 0;
  for (const Path& p : plan) sum += p.arrival();
  return sum;
}

TimeStep makespan(const Plan& plan) {
  TimeStep m = 0;
  for (const Path& p : plan) m = std::max(m, p.arrival());
  return m;
}

}  // namespace mapf

#include "mapf/ordering.hpp"

#include <algorithm>
#include <queue>

namespace mapf {

PriorityOrdering::PriorityOrdering(int num_agents) : m_(num_agents) {
  if (num_agents < 0) throw Error("negative agent count");
  words_ = (m_ + 63) / 64;
  reach_.assign(static_cast<size_t>(m_) * words_, 0);
}

bool PriorityOrdering::precedes(int i, int j) const {
  if (i < 0 || j < 0 || i >= m_ || j >= m_ || i == j) return false;
  return bit(i, j);
}

void PriorityOrdering::add(int lo, int hi) {
  if (lo == hi) throw CycleError("ordering pair with identical agents");
  if (lo < 0 || hi < 0 || lo >= m_ || hi >= m_) throw Error("agent index out of range");
  if (precedes(hi, lo)) throw CycleError("adding pair would create a cycle");
  pairs_.emplace_back(lo, hi);
  if (precedes(lo, hi)) return;  // already implied, closure unchanged
  // Everything reaching lo (plus lo itself) now reaches hi and hi's successors.
  for (int a = 0; a < m_; ++a) {
    if (a != lo && !bit(a, lo)) continue;
    uint64_t* row = &reach_[static_cast<size_t>(a) * words_];
    const uint64_t* hi_row = &reach_[static_cast<size_t>(hi) * words_];
    for (int w = 0; w < words_; ++w) row[w] |= hi_row[w];
    set_bit(a, hi);
  }
}

std::vector<int> PriorityOrdering::topo_below(int i) const {
  std::vector<int> members{i};
  for (int j = 0; j < m_; ++j)
    if (precedes(i, j)) members.push_back(j);
  std::sort(members.begin(), members.end());

  // Kahn's algorithm over the closure restricted to `members`, with a
  // min-heap so incomparable indices come out in ascending order.
  std::vector<int> indegree(members.size(), 0);
  for (size_t a = 0; a < members.size(); ++a)
    for (size_t b = 0; b < members.size(); ++b)
      if (precedes(members[a], members[b])) ++indegree[b];

  std::priority_queue<int, std::vector<int>, std::greater<>> ready;
  for (size_t k = 0; k < members.size(); ++k)
    if (indegree[k] == 0) ready.push(static_cast<int>(k));

  std::vector<int> order;
  order.reserve(members.size());
  while (!ready.empty()) {
    int k = ready.top();
    ready.pop();
    order.push_back(members[k]);
    for (size_t b = 0; b < members.size(); ++b) {
      if (precedes(members[k], members[b]) && --indegree[b] == 0)
        ready.push(static_cast<int>(b));
    }
  }
  return order;
}

bool PriorityOrdering::extends(const PriorityOrdering& a, const PriorityOrdering& b) {
  int m = std::max(a.num_agents(), b.num_agents());
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (b.precedes(i, j) && !a.precedes(i, j)) return false;
  return true;
}

}  // namespace mapf

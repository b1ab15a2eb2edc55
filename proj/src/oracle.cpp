#include "atk/oracle.hpp"

#include <queue>

namespace atk {
namespace oracle {

std::vector<i128> dp_values(const Instance& inst) {
  std::vector<i128> value(size_t(inst.t) + 1, kNegInf);
  value[0] = 0;
  for (i64 j = 1; j <= inst.t; ++j) {
    for (int i = 0; i < inst.n(); ++i) {
      i64 w = inst.weights[i];
      if (w > j || is_neg_inf(value[j - w])) continue;
      i128 cand = value[j - w] + inst.profit_of(i);
      if (cand > value[j]) value[j] = cand;
    }
  }
  return value;
}

SolutionTable dp_lexmin_solutions(const Instance& inst, const LexOrder& order,
                                  i64 extent) {
  if (extent < 0) extent = inst.t;
  SolutionTable table{size_t(extent)};
  table.sols[0] = Solution{};
  for (i64 j = 1; j <= extent; ++j) {
    std::optional<Solution> best;
    for (int i = 0; i < inst.n(); ++i) {
      i64 w = inst.weights[i];
      if (w > j || !table.sols[j - w]) continue;
      Solution cand = solution_add(*table.sols[j - w], u32(i), inst, order);
      if (!best || cand.value > best->value ||
          (cand.value == best->value &&
           lex_compare(cand, *best, order) == std::strong_ordering::less)) {
        best = std::move(cand);
      }
    }
    table.sols[j] = std::move(best);
  }
  return table;
}

std::vector<i64> dijkstra_residues(const Instance& inst) {
  ATK_CHECK(inst.n() >= 1, "dijkstra_residues: no items");
  i64 w1 = inst.weights[0];
  std::vector<i64> dist(size_t(w1), -1);
  using Node = std::pair<i64, i64>;  // (sum, residue)
  std::priority_queue<Node, std::vector<Node>, std::greater<>> pq;
  dist[0] = 0;
  pq.emplace(0, 0);
  while (!pq.empty()) {
    auto [s, r] = pq.top();
    pq.pop();
    if (s != dist[r]) continue;  // stale entry
    for (i64 w : inst.weights) {
      i64 r2 = (r + w) % w1;
      if (dist[r2] < 0 || s + w < dist[r2]) {
        dist[r2] = s + w;
        pq.emplace(s + w, r2);
      }
    }
  }
  return dist;
}

}  // namespace oracle
}  // namespace atk

#include "atk/propagation.hpp"

#include <algorithm>
#include <queue>

namespace atk {
namespace propagation {

i64 propagation_extent(const Instance& inst) {
  if (inst.u >= (i64(1) << 20)) return inst.t;  // u^2 >= 2^40 >= t
  return std::min(inst.t, inst.u * inst.u);
}

SolutionTable seed_from_kernels(const kernel::KernelTable& kernels,
                                const Instance& inst, const LexOrder& order,
                                i64 extent) {
  SolutionTable table{size_t(extent)};
  const i64 hi = std::min(extent, kernels.extent());
  for (i64 pos = 0; pos <= hi; ++pos)
    if (kernels.feasible(pos))
      table.sols[pos] = kernels.solution_at(pos, inst, order);
  return table;
}

SolutionTable propagate(const SolutionTable& seeded, const Instance& inst,
                        const LexOrder& order) {
  const i64 extent = propagation_extent(inst);
  SolutionTable table{size_t(extent)};
  const i64 copy_hi = std::min(extent, seeded.extent());
  for (i64 pos = 0; pos <= copy_hi; ++pos) table.sols[pos] = seeded.sols[pos];

  for (i64 j = 0; j <= extent; ++j) {
    if (!table.sols[j]) continue;
    const Solution& base = *table.sols[j];
    ATK_CHECK(base.sum == j, "table entry stored at a foreign sum");
    for (size_t ei = 0; ei < base.entries.size(); ++ei) {
      const u32 x = base.entries[ei].item;
      const i64 jn = j + inst.weights[x];
      if (jn > extent) continue;
      const i128 cand_value = base.value + inst.profit_of(x);
      std::optional<Solution>& cur = table.sols[jn];
      const bool better =
          !cur || cand_value > cur->value ||
          (cand_value == cur->value &&
           lex_compare_incremented(base, x, *cur, order) ==
               std::strong_ordering::less);
      if (better) {
        Solution cand = solution_add(base, x, inst, order);
        // writing to jn > j: `base` stays untouched
        table.sols[jn] = std::move(cand);
      }
    }
  }
  return table;
}

std::vector<std::optional<Solution>> propagate_modular(
    const kernel::KernelTable& kernels, const Instance& inst,
    const LexOrder& order) {
  ATK_CHECK(inst.n() >= 1, "residue table needs at least one weight");
  const i64 w1 = inst.weights[0];
  std::vector<std::optional<Solution>> best(static_cast<size_t>(w1));

  // Seed each class with the smallest-sum kernel entry (ascending scan makes
  // the first hit per class the minimum).
  for (i64 pos = 0; pos <= kernels.extent(); ++pos) {
    if (!kernels.feasible(pos)) continue;
    const i64 r = pos % w1;
    if (!best[r]) best[r] = kernels.solution_at(pos, inst, order);
  }

  using HeapEntry = std::pair<i64, i64>;  // (sum, residue); lazy deletion
  std::priority_queue<HeapEntry, std::vector<HeapEntry>, std::greater<>> pq;
  for (i64 r = 0; r < w1; ++r)
    if (best[r]) pq.emplace(best[r]->sum, r);

  std::vector<u8> done(size_t(w1), 0);
  while (!pq.empty()) {
    auto [sum, r] = pq.top();
    pq.pop();
    if (done[r] || sum != best[r]->sum) continue;  // stale
    done[r] = 1;
    const Solution& s = *best[r];
    for (const Solution::Entry& e : s.entries) {
      const u32 x = e.item;
      const i64 r2 = (r + inst.weights[x]) % w1;
      const i64 cand_sum = sum + inst.weights[x];
      if (done[r2]) continue;
      const bool better =
          !best[r2] || cand_sum < best[r2]->sum ||
          (cand_sum == best[r2]->sum &&
           lex_compare_incremented(s, x, *best[r2], order) ==
               std::strong_ordering::less);
      if (better) {
        best[r2] = solution_add(s, x, inst, order);
        pq.emplace(cand_sum, r2);
      }
    }
  }
  return best;
}

u32 tail_item(const Instance& inst, const LexOrder& order) {
  ATK_CHECK(inst.n() >= 1, "tail extension needs at least one item");
  u32 best = 0;
  for (u32 i = 1; i < u32(inst.n()); ++i) {
    const i128 lhs = inst.profit_of(i) * inst.weights[best];
    const i128 rhs = inst.profit_of(best) * inst.weights[i];
    if (lhs > rhs ||
        (lhs == rhs && (inst.weights[i] < inst.weights[best] ||
                        (inst.weights[i] == inst.weights[best] &&
                         order.rank[i] < order.rank[best]))))
      best = i;
  }
  return best;
}

void extend_tail(std::vector<i128>& values, const Instance& inst,
                 const LexOrder& order) {
  const i64 have = i64(values.size()) - 1;
  if (inst.t <= have) {
    values.resize(size_t(inst.t) + 1);
    return;
  }
  const u32 s = tail_item(inst, order);
  const i64 w = inst.weights[s];
  const i128 p = inst.profit_of(s);
  values.resize(size_t(inst.t) + 1, kNegInf);
  for (i64 j = have + 1; j <= inst.t; ++j)
    values[j] = (j - w < 0 || is_neg_inf(values[j - w])) ? kNegInf
                                                         : values[j - w] + p;
}

void extend_tail_stream(const std::vector<i128>& head, const Instance& inst,
                        const LexOrder& order,
                        const std::function<void(i64, i128)>& sink) {
  const i64 have = i64(head.size()) - 1;
  if (inst.t <= have) return;
  const u32 s = tail_item(inst, order);
  const i64 w = inst.weights[s];
  const i128 p = inst.profit_of(s);
  std::vector<i128> window(size_t(w), kNegInf);  // last w values, index j % w
  for (i64 j = std::max<i64>(0, have - w + 1); j <= have; ++j)
    window[j % w] = head[j];
  for (i64 j = have + 1; j <= inst.t; ++j) {
    const i128 v =
        is_neg_inf(window[(j - w) % w]) ? kNegInf : window[(j - w) % w] + p;
    window[j % w] = v;
    sink(j, v);
  }
}

}  // namespace propagation
}  // namespace atk

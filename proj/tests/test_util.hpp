#pragma once

// Shared brute-force helpers for the test suites. Everything here is an
// independent oracle: no code path from the library's pipelines is reused.

#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "atk/core.hpp"

namespace testutil {

using namespace atk;

/// Every solution vector with the given sum (n and target must be tiny).
inline std::vector<Solution> enumerate_solutions(const Instance& inst,
                                                 i64 target,
                                                 const LexOrder& order) {
  std::vector<Solution> out;
  Solution cur;
  std::function<void(u32, i64, const Solution&)> rec = [&](u32 item,
                                                           i64 remaining,
                                                           const Solution& s) {
    if (remaining == 0) {
      out.push_back(s);
      return;
    }
    if (item >= u32(inst.n())) return;
    rec(item + 1, remaining, s);
    if (inst.weights[item] <= remaining)
      rec(item, remaining - inst.weights[item],
          solution_add(s, item, inst, order));
  };
  rec(0, target, cur);
  return out;
}

/// Lexicographically smallest optimal solution by exhaustive enumeration.
inline std::optional<Solution> exhaustive_lexmin(const Instance& inst,
                                                 i64 target,
                                                 const LexOrder& order) {
  std::optional<Solution> best;
  for (const Solution& s : enumerate_solutions(inst, target, order)) {
    if (!best || s.value > best->value ||
        (s.value == best->value &&
         lex_compare(s, *best, order) == std::strong_ordering::less))
      best = s;
  }
  return best;
}

/// All witnesses of output i for the boolean convolution a (*) b.
inline std::vector<u32> brute_witnesses(const BitVec& a, const BitVec& b,
                                        u32 i) {
  std::vector<u32> out;
  for (u32 k = 0; k < a.size(); ++k)
    if (a[k] && k <= i && size_t(i - k) < b.size() && b[i - k]) out.push_back(k);
  return out;
}

inline BitVec random_bits(size_t len, double density, std::mt19937_64& rng) {
  BitVec v(len, 0);
  for (auto& x : v) x = (rng() % 1000) < u64(density * 1000) ? 1 : 0;
  return v;
}

inline std::vector<i64> random_weights(int n, i64 u, std::mt19937_64& rng) {
  std::vector<i64> w(n);
  for (auto& x : w) x = 1 + i64(rng() % u64(u));
  return w;
}

}  // namespace testutil

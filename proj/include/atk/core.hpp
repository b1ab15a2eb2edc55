#pragma once

#include <compare>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "atk/types.hpp"

namespace atk {

enum class Mode { subsetsum, coinchange, knapsack, residue };

std::string mode_name(Mode m);
std::optional<Mode> mode_from_name(const std::string& s);

/// One problem input: item weights (and profits in knapsack mode), the target
/// bound t and the weight bound u. u defaults to max weight; a larger explicit
/// u is allowed.
struct Instance {
  std::vector<i64> weights;
  std::vector<i64> profits;  // empty unless mode == knapsack
  i64 t = 0;
  i64 u = 1;
  Mode mode = Mode::subsetsum;

  Instance() = default;
  Instance(std::vector<i64> w, i64 t, Mode mode, i64 u_explicit = 0);
  Instance(std::vector<i64> w, std::vector<i64> p, i64 t, i64 u_explicit = 0);

  int n() const { return static_cast<int>(weights.size()); }
  /// Effective profit of one copy of item i under this mode.
  i128 profit_of(u32 item) const;

  void validate() const;  // throws std::invalid_argument on bad input
};

/// A permutation of the items; the order all lexicographic reasoning uses.
/// perm[r] is the item at rank r, rank[i] the rank of item i.
struct LexOrder {
  std::vector<u32> perm;
  std::vector<u32> rank;

  static LexOrder identity(u32 n);
  static LexOrder from_permutation(std::vector<u32> perm);
  static LexOrder random(u32 n, std::mt19937_64& rng);

  u32 n() const { return static_cast<u32>(perm.size()); }
};

/// Sparse multiset of items. Entries are kept sorted by rank so lexicographic
/// comparison is a linear merge. value/size/sum are caches of the obvious sums.
struct Solution {
  struct Entry {
    u32 item;
    u64 mult;
    bool operator==(const Entry&) const = default;
  };
  std::vector<Entry> entries;  // ascending by order.rank[item], mult >= 1
  i128 value = 0;
  u64 size = 0;
  i64 sum = 0;

  bool operator==(const Solution&) const = default;
  bool empty() const { return entries.empty(); }
  u64 multiplicity_of(u32 item) const;
  std::string to_string() const;
};

/// Per-target optional solutions over [0, extent]. Absent = not (yet) feasible.
struct SolutionTable {
  std::vector<std::optional<Solution>> sols;

  explicit SolutionTable(size_t extent = 0) : sols(extent + 1) {}
  i64 extent() const { return static_cast<i64>(sols.size()) - 1; }
};

/// Lexicographic comparison under sigma: at the first rank where the
/// multiplicities differ, the solution with MORE copies is the smaller one.
/// std::strong_ordering::less means a is lex-smaller than b.
std::strong_ordering lex_compare(const Solution& a, const Solution& b,
                                 const LexOrder& order);

/// Compare (base + one extra copy of `item`) against rhs without materializing
/// the incremented solution. Equivalent to lex_compare(add(base,item), rhs, o).
std::strong_ordering lex_compare_incremented(const Solution& base, u32 item,
                                             const Solution& rhs,
                                             const LexOrder& order);

/// Returns base with one more copy of `item`; caches updated.
Solution solution_add(const Solution& base, u32 item, const Instance& inst,
                      const LexOrder& order);

/// Value of a solution: sum of profits (knapsack), minus size (coinchange),
/// 0 otherwise.
i128 solution_value(const Solution& s, const Instance& inst);

/// Recompute value/size/sum from entries (cache oracle for tests).
Solution recompute_caches(const Solution& s, const Instance& inst);

/// Distinct-weight view used by the unweighted pipelines: duplicates of a
/// weight are interchangeable, keep the first item carrying each weight.
struct DistinctWeights {
  std::vector<i64> weights;        // ascending distinct weights
  std::vector<u32> item_of_weight; // representative original item per weight
};
DistinctWeights dedup_weights(const Instance& inst);

}  // namespace atk

#include "atk/core.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace atk {

std::string to_string_i128(i128 v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  u128 x = neg ? u128(-(v + 1)) + 1 : u128(v);
  std::string out;
  while (x > 0) {
    out.push_back(char('0' + int(x % 10)));
    x /= 10;
  }
  if (neg) out.push_back('-');
  std::reverse(out.begin(), out.end());
  return out;
}

i128 parse_i128(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty integer literal");
  size_t pos = 0;
  bool neg = false;
  if (s[0] == '-' || s[0] == '+') {
    neg = s[0] == '-';
    pos = 1;
  }
  if (pos == s.size()) throw std::invalid_argument("bad integer literal: " + s);
  i128 v = 0;
  for (; pos < s.size(); ++pos) {
    if (s[pos] < '0' || s[pos] > '9')
      throw std::invalid_argument("bad integer literal: " + s);
    v = v * 10 + (s[pos] - '0');
  }
  return neg ? -v : v;
}

std::string mode_name(Mode m) {
  switch (m) {
    case Mode::subsetsum: return "subsetsum";
    case Mode::coinchange: return "coinchange";
    case Mode::knapsack: return "knapsack";
    case Mode::residue: return "residue";
  }
  return "?";
}

std::optional<Mode> mode_from_name(const std::string& s) {
  if (s == "subsetsum") return Mode::subsetsum;
  if (s == "coinchange") return Mode::coinchange;
  if (s == "knapsack") return Mode::knapsack;
  if (s == "residue") return Mode::residue;
  return std::nullopt;
}

namespace {
constexpr i64 kMaxT = i64(1) << 40;
constexpr i64 kMaxProfitAbs = i64(1) << 40;
constexpr i64 kMaxN = i64(1) << 20;
}  // namespace

Instance::Instance(std::vector<i64> w, i64 t_, Mode mode_, i64 u_explicit)
    : weights(std::move(w)), t(t_), mode(mode_) {
  u = u_explicit;
  for (i64 x : weights) u = std::max(u, x);
  if (u < 1) u = 1;
  validate();
}

Instance::Instance(std::vector<i64> w, std::vector<i64> p, i64 t_, i64 u_explicit)
    : weights(std::move(w)), profits(std::move(p)), t(t_), mode(Mode::knapsack) {
  u = u_explicit;
  for (i64 x : weights) u = std::max(u, x);
  if (u < 1) u = 1;
  validate();
}

void Instance::validate() const {
  if (static_cast<i64>(weights.size()) > kMaxN)
    throw std::invalid_argument("too many items (n > 2^20)");
  if (t < 0 || t > kMaxT)
    throw std::invalid_argument("target bound t out of range [0, 2^40]");
  if (u < 1) throw std::invalid_argument("weight bound u must be positive");
  for (i64 w : weights)
    if (w < 1 || w > u)
      throw std::invalid_argument("weight outside [1, u]");
  bool want_profits = mode == Mode::knapsack;
  if (want_profits != !profits.empty() && !(want_profits && weights.empty()))
    throw std::invalid_argument(want_profits ? "knapsack mode requires profits"
                                             : "profits only valid in knapsack mode");
  if (!profits.empty() && profits.size() != weights.size())
    throw std::invalid_argument("profits/weights length mismatch");
  for (i64 p : profits)
    if (p < -kMaxProfitAbs || p > kMaxProfitAbs)
      throw std::invalid_argument("profit outside [-2^40, 2^40]");
}

i128 Instance::profit_of(u32 item) const {
  switch (mode) {
    case Mode::knapsack: return profits[item];
    case Mode::coinchange: return -1;
    default: return 0;
  }
}

LexOrder LexOrder::identity(u32 n) {
  LexOrder o;
  o.perm.resize(n);
  o.rank.resize(n);
  std::iota(o.perm.begin(), o.perm.end(), 0u);
  std::iota(o.rank.begin(), o.rank.end(), 0u);
  return o;
}

LexOrder LexOrder::from_permutation(std::vector<u32> perm) {
  LexOrder o;
  o.rank.assign(perm.size(), u32(-1));
  for (u32 r = 0; r < perm.size(); ++r) {
    ATK_CHECK(perm[r] < perm.size() && o.rank[perm[r]] == u32(-1),
              "perm is not a permutation");
    o.rank[perm[r]] = r;
  }
  o.perm = std::move(perm);
  return o;
}

LexOrder LexOrder::random(u32 n, std::mt19937_64& rng) {
  std::vector<u32> perm(n);
  std::iota(perm.begin(), perm.end(), 0u);
  std::shuffle(perm.begin(), perm.end(), rng);
  return from_permutation(std::move(perm));
}

u64 Solution::multiplicity_of(u32 item) const {
  for (const Entry& e : entries)
    if (e.item == item) return e.mult;
  return 0;
}

std::string Solution::to_string() const {
  std::string out = "{";
  for (size_t i = 0; i < entries.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(entries[i].item) + ":" + std::to_string(entries[i].mult);
  }
  return out + "}";
}

std::strong_ordering lex_compare(const Solution& a, const Solution& b,
                                 const LexOrder& order) {
  size_t ia = 0, ib = 0;
  while (ia < a.entries.size() && ib < b.entries.size()) {
    u32 ra = order.rank[a.entries[ia].item];
    u32 rb = order.rank[b.entries[ib].item];
    if (ra == rb) {
      if (a.entries[ia].mult != b.entries[ib].mult)
        return a.entries[ia].mult > b.entries[ib].mult
                   ? std::strong_ordering::less
                   : std::strong_ordering::greater;
      ++ia;
      ++ib;
    } else if (ra < rb) {
      // a has copies at an earlier rank where b has none.
      return std::strong_ordering::less;
    } else {
      return std::strong_ordering::greater;
    }
  }
  if (ia < a.entries.size()) return std::strong_ordering::less;
  if (ib < b.entries.size()) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::strong_ordering lex_compare_incremented(const Solution& base, u32 item,
                                             const Solution& rhs,
                                             const LexOrder& order) {
  u32 rinc = order.rank[item];
  size_t ia = 0, ib = 0;
  bool pending = true;  // the extra copy of `item` not yet consumed
  while (true) {
    // Effective next (rank, mult) on the incremented side.
    u32 ra = ia < base.entries.size() ? order.rank[base.entries[ia].item]
                                      : u32(-1);
    u64 ma = ia < base.entries.size() ? base.entries[ia].mult : 0;
    if (pending) {
      if (ra == rinc) {
        ma += 1;
      } else if (rinc < ra) {
        ra = rinc;
        ma = 1;
      }
    }
    u32 rb = ib < rhs.entries.size() ? order.rank[rhs.entries[ib].item] : u32(-1);
    u64 mb = ib < rhs.entries.size() ? rhs.entries[ib].mult : 0;
    if (ra == u32(-1) && rb == u32(-1)) return std::strong_ordering::equal;
    if (ra < rb) return std::strong_ordering::less;
    if (rb < ra) return std::strong_ordering::greater;
    if (ma != mb)
      return ma > mb ? std::strong_ordering::less : std::strong_ordering::greater;
    if (ra == rinc) pending = false;
    if (ia < base.entries.size() && order.rank[base.entries[ia].item] == ra) ++ia;
    ++ib;
  }
}

Solution solution_add(const Solution& base, u32 item, const Instance& inst,
                      const LexOrder& order) {
  Solution out = base;
  u32 r = order.rank[item];
  auto it = std::lower_bound(
      out.entries.begin(), out.entries.end(), r,
      [&](const Solution::Entry& e, u32 rr) { return order.rank[e.item] < rr; });
  if (it != out.entries.end() && it->item == item) {
    it->mult += 1;
  } else {
    out.entries.insert(it, Solution::Entry{item, 1});
  }
  out.value += inst.profit_of(item);
  out.size += 1;
  out.sum += inst.weights[item];
  return out;
}

i128 solution_value(const Solution& s, const Instance& inst) {
  switch (inst.mode) {
    case Mode::knapsack: {
      i128 v = 0;
      for (const auto& e : s.entries) v += i128(inst.profits[e.item]) * e.mult;
      return v;
    }
    case Mode::coinchange: {
      i128 v = 0;
      for (const auto& e : s.entries) v += e.mult;
      return -v;
    }
    default: return 0;
  }
}

Solution recompute_caches(const Solution& s, const Instance& inst) {
  Solution out = s;
  out.value = solution_value(s, inst);
  out.size = 0;
  out.sum = 0;
  for (const auto& e : s.entries) {
    out.size += e.mult;
    out.sum += inst.weights[e.item] * i64(e.mult);
  }
  return out;
}

DistinctWeights dedup_weights(const Instance& inst) {
  std::map<i64, u32> first_item;
  for (u32 i = 0; i < inst.weights.size(); ++i)
    first_item.emplace(inst.weights[i], i);  // keeps the first occurrence
  DistinctWeights out;
  out.weights.reserve(first_item.size());
  out.item_of_weight.reserve(first_item.size());
  for (auto [w, item] : first_item) {
    out.weights.push_back(w);
    out.item_of_weight.push_back(item);
  }
  return out;
}

}  // namespace atk

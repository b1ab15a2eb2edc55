#include "atk/witness.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "atk/convolution.hpp"

namespace atk {
namespace witness {
namespace {

constexpr u32 kUnset = u32(-1);

u64 ceil_log2(u64 x) { return x <= 1 ? 0 : std::bit_width(x - 1); }

std::vector<u32> support_of(const BitVec& a) {
  std::vector<u32> s;
  for (u32 i = 0; i < a.size(); ++i)
    if (a[i]) s.push_back(i);
  return s;
}

bool is_witness(const WitnessProblem& p, u32 out, u32 k) {
  return k < p.a.size() && k <= out && size_t(out - k) < p.b.size() &&
         p.a[k] && p.b[out - k];
}

}  // namespace

WitnessProblem WitnessProblem::from_arrays(BitVec a, BitVec b) {
  WitnessProblem p;
  if (!a.empty() && !b.empty()) {
    BoolConvolution conv = bool_convolve(a, b);
    ATK_CHECK(conv.counts.size() < (size_t(1) << 31), "output range too long");
    for (u32 i = 0; i < conv.counts.size(); ++i) {
      if (conv.counts[i] > 0) {
        p.outputs.push_back(i);
        p.counts.push_back(conv.counts[i]);
      }
    }
  }
  p.a = std::move(a);
  p.b = std::move(b);
  return p;
}

WitnessProblem WitnessProblem::from_arrays(BitVec a, BitVec b,
                                           std::vector<u32> outputs) {
  BoolConvolution conv = bool_convolve(a, b);
  WitnessProblem p;
  p.counts.reserve(outputs.size());
  for (u32 out : outputs) {
    ATK_CHECK(out < conv.counts.size() && conv.counts[out] > 0,
              "tracked output has no witnesses");
    p.counts.push_back(conv.counts[out]);
  }
  p.a = std::move(a);
  p.b = std::move(b);
  p.outputs = std::move(outputs);
  return p;
}

std::vector<u32> sample_witnesses(const WitnessProblem& p,
                                  std::mt19937_64& rng) {
  std::vector<u32> result(p.outputs.size(), kUnset);
  if (p.outputs.empty()) return result;
  const std::vector<u32> sup = support_of(p.a);
  const int max_r = int(std::bit_width(std::max<size_t>(1, sup.size())));
  size_t remaining = p.outputs.size();
  // Expected O(1) passes per output; a generous cap turns inconsistent input
  // counts into a contract error rather than a spin.
  const u64 pass_cap = 256 * (ceil_log2(p.out_len() + 2) + 4);
  u64 passes = 0;
  std::vector<std::vector<u32>> kept(size_t(max_r) + 1);
  while (remaining > 0) {
    ATK_CHECK(++passes <= pass_cap,
              "sample_witnesses: counts inconsistent with arrays");
    kept[0] = sup;
    for (int r = 1; r <= max_r; ++r) {
      kept[r].clear();
      const u64 mask = (u64(1) << r) - 1;
      for (u32 x : sup)
        if ((rng() & mask) == 0) kept[r].push_back(x);
    }
    for (size_t oi = 0; oi < p.outputs.size(); ++oi) {
      if (result[oi] != kUnset) continue;
      const u32 out = p.outputs[oi];
      for (int r = 0; r <= max_r; ++r) {
        u32 survivors = 0;
        u32 survivor = 0;
        for (u32 x : kept[r]) {
          if (x > out) break;  // kept ascending
          if (size_t(out - x) < p.b.size() && p.b[out - x]) {
            survivor = x;
            if (++survivors > 1) break;
          }
        }
        if (survivors == 1) {
          ATK_CHECK(is_witness(p, out, survivor),
                    "sampled witness failed verification");
          result[oi] = survivor;
          --remaining;
          break;
        }
      }
    }
  }
  return result;
}

namespace {

struct KdContext {
  const WitnessProblem& p;
  const std::vector<u32>& rs;  // sorted restricted support of a
  WitnessSets& out;
  std::vector<u64> quota;  // per output index, how many more witnesses wanted
};

// Does output `out` have a witness among rs[i0..i1)?
bool any_witness_in(const KdContext& c, u32 out, size_t i0, size_t i1) {
  for (size_t i = i0; i < i1; ++i) {
    u32 x = c.rs[i];
    if (x > out) return false;
    if (size_t(out - x) < c.p.b.size() && c.p.b[out - x]) return true;
  }
  return false;
}

void kd_dfs(KdContext& c, size_t i0, size_t i1, const std::vector<u32>& active) {
  if (active.empty() || i0 >= i1) return;
  if (i1 - i0 == 1) {
    const u32 x = c.rs[i0];
    for (u32 oi : active) {
      if (c.quota[oi] == 0) continue;
      const u32 out = c.p.outputs[oi];
      if (x <= out && size_t(out - x) < c.p.b.size() && c.p.b[out - x]) {
        c.out.sets[oi].push_back(x);
        --c.quota[oi];
      }
    }
    return;
  }
  const size_t mid = i0 + (i1 - i0) / 2;
  std::vector<u32> sub;
  sub.reserve(active.size());
  for (u32 oi : active)
    if (c.quota[oi] > 0 && any_witness_in(c, c.p.outputs[oi], i0, mid))
      sub.push_back(oi);
  kd_dfs(c, i0, mid, sub);
  sub.clear();
  for (u32 oi : active)
    if (c.quota[oi] > 0 && any_witness_in(c, c.p.outputs[oi], mid, i1))
      sub.push_back(oi);
  kd_dfs(c, mid, i1, sub);
}

}  // namespace

WitnessSets k_distinct_witnesses(const WitnessProblem& p, u64 k,
                                 const std::vector<u32>& restriction,
                                 const std::vector<u32>* only_outputs) {
  WitnessSets ws;
  ws.sets.resize(p.outputs.size());
  if (k == 0 || restriction.empty() || p.outputs.empty()) return ws;
  std::vector<u32> rs;
  rs.reserve(restriction.size());
  for (u32 x : restriction)
    if (x < p.a.size() && p.a[x]) rs.push_back(x);
  std::sort(rs.begin(), rs.end());
  rs.erase(std::unique(rs.begin(), rs.end()), rs.end());
  if (rs.empty()) return ws;

  KdContext c{p, rs, ws, std::vector<u64>(p.outputs.size(), 0)};
  std::vector<u32> active;
  if (only_outputs) {
    active = *only_outputs;
  } else {
    active.resize(p.outputs.size());
    std::iota(active.begin(), active.end(), 0u);
  }
  for (u32 oi : active) c.quota[oi] = k;
  kd_dfs(c, 0, rs.size(), active);
  return ws;
}

std::vector<u32> greedy_hitting_set(const std::vector<std::vector<u32>>& sets,
                                    u64 universe_n, u64 r_min, u64 cap) {
  if (sets.empty()) return {};
  ATK_CHECK(r_min >= 1, "hitting set: R must be positive");
  u32 max_el = 0;
  for (const auto& s : sets) {
    ATK_CHECK(s.size() >= r_min, "hitting set: input set smaller than R");
    for (u32 e : s) max_el = std::max(max_el, e);
  }
  const u64 formula = u64(std::ceil(double(universe_n) / double(r_min) *
                                    std::log(double(std::max<u64>(2, sets.size())))));
  const u64 bound = std::min(cap, std::max<u64>(formula, 1));

  std::vector<u64> occ(size_t(max_el) + 1, 0);
  for (const auto& s : sets)
    for (u32 e : s) ++occ[e];
  std::vector<u8> hit(sets.size(), 0);
  size_t unhit = sets.size();
  std::vector<u32> out;
  while (unhit > 0) {
    ATK_CHECK(out.size() < bound, "hitting set: size bound exceeded");
    u32 best = 0;
    u64 best_occ = 0;
    for (u32 e = 0; e <= max_el; ++e) {
      if (occ[e] > best_occ) {
        best_occ = occ[e];
        best = e;
      }
    }
    ATK_CHECK(best_occ > 0, "hitting set: stuck");
    out.push_back(best);
    for (size_t i = 0; i < sets.size(); ++i) {
      if (hit[i]) continue;
      if (std::find(sets[i].begin(), sets[i].end(), best) != sets[i].end()) {
        hit[i] = 1;
        --unhit;
        for (u32 e : sets[i]) --occ[e];
      }
    }
  }
  return out;
}

MinWitnessSession::MinWitnessSession(size_t universe_len, std::mt19937_64& rng)
    : rng_(&rng) {
  const size_t n = std::bit_ceil(std::max<size_t>(1, universe_len));
  sigma_.resize(n);
  std::iota(sigma_.begin(), sigma_.end(), 0u);
  std::shuffle(sigma_.begin(), sigma_.end(), rng);
  rank_.resize(n);
  for (u32 r = 0; r < n; ++r) rank_[sigma_[r]] = r;
}

namespace {

struct PoolEntry {
  u32 oi;
  u32 out;
  u64 target;             // exact witness count inside the activating prefix
  std::vector<u32> got;   // distinct witnesses collected so far
};

// Collect all `target` witnesses of each pool output by uniform sampling over
// the prefix support, then resolve to the rank-minimum.
void run_sampling_pool(const WitnessProblem& p, std::vector<PoolEntry>& pool,
                       const std::vector<u32>& prefix_support,
                       const std::vector<u32>& rank, std::mt19937_64& rng,
                       std::vector<u32>& result, size_t& resolved) {
  size_t open = pool.size();
  u64 max_target = 1;
  for (const PoolEntry& e : pool) max_target = std::max(max_target, e.target);
  const u64 pass_cap =
      512 + 64 * max_target * (ceil_log2(max_target) + 2);
  u64 passes = 0;
  // entries sharing a target size share one sampled kept-list per pass
  std::stable_sort(pool.begin(), pool.end(),
                   [](const PoolEntry& a, const PoolEntry& b) {
                     return a.target < b.target;
                   });
  std::vector<u32> kept;
  while (open > 0) {
    ATK_CHECK(++passes <= pass_cap,
              "witness sampling: counts inconsistent with arrays");
    u64 cached_r = u64(-1);
    for (PoolEntry& e : pool) {
      if (e.got.size() == e.target) continue;
      const u64 r = std::max<u64>(1, ceil_log2(e.target));
      if (r != cached_r) {
        cached_r = r;
        kept.clear();
        const u64 mask = (u64(1) << r) - 1;
        for (u32 x : prefix_support)
          if ((rng() & mask) == 0) kept.push_back(x);
      }
      u32 survivors = 0;
      u32 survivor = 0;
      for (u32 x : kept) {
        if (x <= e.out && size_t(e.out - x) < p.b.size() && p.b[e.out - x]) {
          survivor = x;
          if (++survivors > 1) break;
        }
      }
      if (survivors != 1) continue;
      if (std::find(e.got.begin(), e.got.end(), survivor) == e.got.end()) {
        ATK_CHECK(is_witness(p, e.out, survivor),
                  "sampled witness failed verification");
        e.got.push_back(survivor);
        if (e.got.size() == e.target) {
          u32 best = e.got[0];
          for (u32 w : e.got)
            if (rank[w] < rank[best]) best = w;
          result[e.oi] = best;
          ++resolved;
          --open;
        }
      }
    }
  }
}

}  // namespace

std::vector<u32> MinWitnessSession::resolve(const WitnessProblem& p,
                                            std::vector<u64>* activation_counts) {
  ATK_CHECK(p.a.size() <= sigma_.size(),
            "problem universe exceeds session universe");
  const size_t n_out = p.outputs.size();
  std::vector<u32> result(n_out, kUnset);
  if (activation_counts) activation_counts->assign(n_out, 0);
  if (n_out == 0) return result;
  const size_t out_len = p.out_len();
  ATK_CHECK(out_len < (size_t(1) << 31), "output range too long");

  struct SupEl {
    u32 rank;
    u32 pos;
  };
  std::vector<SupEl> sup;
  for (u32 x = 0; x < p.a.size(); ++x)
    if (p.a[x]) sup.push_back({rank_[x], x});
  std::sort(sup.begin(), sup.end(),
            [](const SupEl& a, const SupEl& b) { return a.rank < b.rank; });

  std::vector<u32> bpos = support_of(p.b);

  std::vector<u32> oi_of(out_len, kUnset);
  for (u32 oi = 0; oi < n_out; ++oi) {
    ATK_CHECK(p.outputs[oi] < out_len && oi_of[p.outputs[oi]] == kUnset,
              "outputs must be unique and in range");
    oi_of[p.outputs[oi]] = oi;
  }

  std::vector<u32> cnt(out_len, 0);
  std::vector<u32> cand(out_len, 0);
  std::vector<u32> newly;
  std::vector<u32> prefix_support;  // positions folded so far, any order
  size_t resolved = 0;
  size_t si = 0;

  for (u64 l = 1; si < sup.size() && resolved < n_out; l <<= 1) {
    newly.clear();
    const u64 hi = l;  // ranks [l/2, l) enter at this level; [0,1) when l == 1
    while (si < sup.size() && sup[si].rank < hi) {
      const u32 x = sup[si].pos;
      ++si;
      prefix_support.push_back(x);
      for (u32 y : bpos) {
        const u32 i = x + y;
        if (i >= out_len) break;
        if (++cnt[i] == 1) {
          cand[i] = x;
          if (oi_of[i] != kUnset) newly.push_back(oi_of[i]);
        }
      }
    }
    if (newly.empty()) continue;
    std::vector<PoolEntry> pool;
    for (u32 oi : newly) {
      const u32 out = p.outputs[oi];
      const u64 c = cnt[out];
      if (activation_counts) (*activation_counts)[oi] = c;
      if (c == 1) {
        const u32 w = cand[out];
        ATK_CHECK(is_witness(p, out, w), "minimum witness failed verification");
        result[oi] = w;
        ++resolved;
      } else {
        pool.push_back(PoolEntry{oi, out, c, {}});
      }
    }
    if (!pool.empty())
      run_sampling_pool(p, pool, prefix_support, rank_, *rng_, result, resolved);
  }
  ATK_CHECK(resolved == n_out,
            "min witness: some tracked output never activated");
  return result;
}

MinWitnessResult min_witness_random_order(
    const std::vector<WitnessProblem>& problems, std::mt19937_64& rng) {
  size_t universe = 1;
  for (const auto& p : problems) universe = std::max(universe, p.a.size());
  MinWitnessSession session(universe, rng);
  MinWitnessResult res;
  res.sigma = session.sigma();
  res.witnesses.reserve(problems.size());
  res.activation_counts.reserve(problems.size());
  for (const auto& p : problems) {
    res.activation_counts.emplace_back();
    res.witnesses.push_back(session.resolve(p, &res.activation_counts.back()));
  }
  return res;
}

AdaptiveResult adaptive_min_witness(const std::vector<WitnessProblem>& problems) {
  size_t universe = 1;
  for (const auto& p : problems) universe = std::max(universe, p.a.size());
  const size_t n = std::bit_ceil(universe);

  std::vector<u32> rank(n, kUnset);
  std::vector<u32> prefix(n);  // current candidate prefix P, kept ascending
  std::iota(prefix.begin(), prefix.end(), 0u);

  struct Pending {
    u32 pi;
    u32 oi;
  };
  std::vector<Pending> unresolved;
  AdaptiveResult res;
  res.witnesses.resize(problems.size());
  for (u32 pi = 0; pi < problems.size(); ++pi) {
    res.witnesses[pi].assign(problems[pi].outputs.size(), kUnset);
    for (u32 oi = 0; oi < problems[pi].outputs.size(); ++oi)
      unresolved.push_back({pi, oi});
  }

  for (size_t m = n; m >= 2; m >>= 1) {
    if (unresolved.empty()) break;
    const u64 k = 2 * ceil_log2(unresolved.size()) + 5;

    // k distinct witnesses inside the current prefix, per problem.
    std::vector<std::vector<u32>> wlist(unresolved.size());
    {
      std::vector<std::vector<u32>> only(problems.size());
      for (const Pending& e : unresolved) only[e.pi].push_back(e.oi);
      std::vector<WitnessSets> found(problems.size());
      for (u32 pi = 0; pi < problems.size(); ++pi)
        if (!only[pi].empty())
          found[pi] = k_distinct_witnesses(problems[pi], k, prefix, &only[pi]);
      for (size_t idx = 0; idx < unresolved.size(); ++idx)
        wlist[idx] = std::move(found[unresolved[idx].pi].sets[unresolved[idx].oi]);
    }

    std::vector<std::vector<u32>> full_sets;
    for (const auto& wl : wlist)
      if (wl.size() >= k) full_sets.push_back(wl);
    std::vector<u32> hits = greedy_hitting_set(full_sets, m, k, m / 2);
    ATK_CHECK(hits.size() <= m / 2, "adaptive: hitting set too large");

    // New prefix = hitting set padded from P with smallest unused elements.
    std::vector<u8> in_new(n, 0);
    std::vector<u32> new_prefix;
    new_prefix.reserve(m / 2);
    for (u32 e : hits) {
      if (!in_new[e]) {
        in_new[e] = 1;
        new_prefix.push_back(e);
      }
    }
    for (u32 e : prefix) {
      if (new_prefix.size() == m / 2) break;
      if (!in_new[e]) {
        in_new[e] = 1;
        new_prefix.push_back(e);
      }
    }

    // Complement takes ranks [m/2, m) in ascending element order.
    {
      u32 r = u32(m / 2);
      for (u32 e : prefix)
        if (!in_new[e]) rank[e] = r++;
      ATK_CHECK(r == m, "adaptive: prefix split out of balance");
    }

    std::vector<Pending> keep;
    keep.reserve(unresolved.size());
    for (size_t idx = 0; idx < unresolved.size(); ++idx) {
      const Pending e = unresolved[idx];
      const auto& wl = wlist[idx];
      ATK_CHECK(!wl.empty(), "adaptive: unresolved output lost its witnesses");
      if (wl.size() < k) {
        bool all_outside = true;
        for (u32 w : wl)
          if (in_new[w]) {
            all_outside = false;
            break;
          }
        if (all_outside) {
          // the complete witness list (within the old prefix) just got ranked
          u32 best = wl[0];
          for (u32 w : wl)
            if (rank[w] < rank[best]) best = w;
          ATK_CHECK(is_witness(problems[e.pi], problems[e.pi].outputs[e.oi], best),
                    "adaptive: witness failed verification");
          res.witnesses[e.pi][e.oi] = best;
          continue;
        }
      } else {
        // full list: must be hit by the new prefix
        bool hit = false;
        for (u32 w : wl)
          if (in_new[w]) {
            hit = true;
            break;
          }
        ATK_CHECK(hit, "adaptive: hitting set missed a full witness list");
      }
      keep.push_back(e);
    }
    unresolved.swap(keep);
    std::sort(new_prefix.begin(), new_prefix.end());
    prefix.swap(new_prefix);
  }

  if (!unresolved.empty()) {
    ATK_CHECK(prefix.size() == 1, "adaptive: unresolved outputs left early");
    const u32 e = prefix[0];
    for (const Pending& pe : unresolved) {
      const u32 out = problems[pe.pi].outputs[pe.oi];
      ATK_CHECK(is_witness(problems[pe.pi], out, e),
                "adaptive: final element is not a witness");
      res.witnesses[pe.pi][pe.oi] = e;
    }
  }
  {
    u32 r = 0;
    for (u32 e : prefix) rank[e] = r++;
  }
  res.sigma.resize(n);
  for (u32 e = 0; e < n; ++e) res.sigma[rank[e]] = e;
  return res;
}

}  // namespace witness
}  // namespace atk

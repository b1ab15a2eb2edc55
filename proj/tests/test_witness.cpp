#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>

#include "atk/witness.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace atk;
using namespace atk::witness;
using namespace testutil;

TEST_CASE("sample_witnesses: forced, empty, uniform") {
  std::mt19937_64 rng(5);

  // unique witness is always returned
  WitnessProblem uniq = WitnessProblem::from_arrays({0, 1, 0, 1}, {1, 0, 0});
  std::vector<u32> d = sample_witnesses(uniq, rng);
  REQUIRE(d.size() == uniq.outputs.size());
  for (size_t oi = 0; oi < uniq.outputs.size(); ++oi) {
    REQUIRE(uniq.counts[oi] == 1);
    CHECK(d[oi] == uniq.outputs[oi]);  // delta kernel: witness = output
  }

  // all-zero counts: no tracked outputs at all
  WitnessProblem none = WitnessProblem::from_arrays({0, 0}, {0, 0});
  CHECK(none.outputs.empty());
  CHECK(sample_witnesses(none, rng).empty());

  // two witnesses, frequencies within 5 sigma of 1/2 over 10^4 draws
  WitnessProblem two = WitnessProblem::from_arrays({0, 1, 1}, {0, 1, 1});
  size_t oi3 = size_t(std::find(two.outputs.begin(), two.outputs.end(), 3) -
                      two.outputs.begin());
  REQUIRE(two.counts[oi3] == 2);
  int hits1 = 0;
  const int draws = 10000;
  for (int i = 0; i < draws; ++i) {
    std::vector<u32> s = sample_witnesses(two, rng);
    if (s[oi3] == 1) ++hits1;
  }
  double sigma = std::sqrt(draws * 0.25);
  CHECK(std::abs(hits1 - draws / 2.0) <= 5 * sigma);
}

TEST_CASE("k_distinct_witnesses: forced, full, empty restriction") {
  std::vector<u32> all(8);
  std::iota(all.begin(), all.end(), 0u);

  WitnessProblem uniq = WitnessProblem::from_arrays({0, 1, 0, 0}, {0, 0, 1, 0});
  WitnessSets one = k_distinct_witnesses(uniq, 1, all);
  for (size_t oi = 0; oi < uniq.outputs.size(); ++oi) {
    REQUIRE(one.sets[oi].size() == 1);
    CHECK(one.sets[oi][0] == 1);
  }

  WitnessProblem some = WitnessProblem::from_arrays({1, 1, 1, 1}, {1, 1, 1});
  WitnessSets empty = k_distinct_witnesses(some, 3, {});
  for (const auto& s : empty.sets) CHECK(s.empty());
}

TEST_CASE("k_distinct_witnesses equals brute force on random arrays") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 60; ++trial) {
    size_t la = 4 + rng() % 253, lb = 4 + rng() % 253;
    BitVec a = random_bits(la, 0.25, rng);
    BitVec b = random_bits(lb, 0.25, rng);
    WitnessProblem p = WitnessProblem::from_arrays(a, b);
    if (p.outputs.empty()) continue;
    u64 k = 1 + rng() % 10;
    std::vector<u32> restriction;
    for (u32 x = 0; x < la; ++x)
      if (rng() % 4) restriction.push_back(x);
    WitnessSets ws = k_distinct_witnesses(p, k, restriction);
    for (size_t oi = 0; oi < p.outputs.size(); ++oi) {
      std::vector<u32> brute = brute_witnesses(a, b, p.outputs[oi]);
      std::erase_if(brute, [&](u32 x) {
        return !std::binary_search(restriction.begin(), restriction.end(), x);
      });
      std::vector<u32> got = ws.sets[oi];
      std::sort(got.begin(), got.end());
      CHECK(got.size() == std::min<u64>(k, brute.size()));
      // distinct, and all genuine witnesses inside the restriction
      CHECK(std::adjacent_find(got.begin(), got.end()) == got.end());
      for (u32 x : got)
        CHECK(std::binary_search(brute.begin(), brute.end(), x));
      if (k >= brute.size()) CHECK(got == brute);
    }
  }
}

TEST_CASE("greedy_hitting_set examples and bound") {
  std::vector<std::vector<u32>> sets{{1, 2}, {2, 3}, {3, 4}};
  std::vector<u32> s = greedy_hitting_set(sets, 4, 2, 100);
  std::sort(s.begin(), s.end());
  CHECK(s == std::vector<u32>{2, 3});

  std::vector<u32> single = greedy_hitting_set({{5, 6, 7}}, 8, 3, 100);
  CHECK(single.size() == 1);

  std::vector<u32> full_universe(6);
  std::iota(full_universe.begin(), full_universe.end(), 0u);
  std::vector<std::vector<u32>> all_full(4, full_universe);
  CHECK(greedy_hitting_set(all_full, 6, 6, 100).size() == 1);

  CHECK_THROWS_AS(greedy_hitting_set({{1}}, 4, 2, 100), contract_error);
}

TEST_CASE("greedy_hitting_set random bound property") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    u64 n = 8 + rng() % 56;
    u64 r = 2 + rng() % 6;
    size_t m = 1 + rng() % 40;
    std::vector<std::vector<u32>> sets(m);
    for (auto& s : sets) {
      while (s.size() < r) {
        u32 e = u32(rng() % n);
        if (std::find(s.begin(), s.end(), e) == s.end()) s.push_back(e);
      }
    }
    std::vector<u32> hs = greedy_hitting_set(sets, n, r, n);
    CHECK(double(hs.size()) <=
          std::ceil(double(n) / double(r) *
                    std::log(double(std::max<size_t>(2, m)))));
    for (const auto& s : sets) {
      bool hit = false;
      for (u32 e : s)
        if (std::find(hs.begin(), hs.end(), e) != hs.end()) hit = true;
      CHECK(hit);
    }
  }
}

namespace {

// exact sigma-minimum from brute force, for cross-checking both finders
u32 brute_min_witness(const BitVec& a, const BitVec& b, u32 out,
                      const std::vector<u32>& sigma) {
  std::vector<u32> rank(sigma.size());
  for (u32 r = 0; r < sigma.size(); ++r) rank[sigma[r]] = r;
  std::vector<u32> wit = brute_witnesses(a, b, out);
  REQUIRE(!wit.empty());
  u32 best = wit[0];
  for (u32 w : wit)
    if (rank[w] < rank[best]) best = w;
  return best;
}

}  // namespace

TEST_CASE("min_witness_random_order: forced and brute-force equality") {
  std::mt19937_64 rng(13);

  // counts of one everywhere: the unique witness under any order
  WitnessProblem uniq = WitnessProblem::from_arrays({0, 1, 0, 1}, {1, 0, 0});
  MinWitnessResult forced = min_witness_random_order({uniq}, rng);
  for (size_t oi = 0; oi < uniq.outputs.size(); ++oi)
    CHECK(forced.witnesses[0][oi] == uniq.outputs[oi]);

  for (int trial = 0; trial < 60; ++trial) {
    size_t la = 4 + rng() % 61, lb = 4 + rng() % 61;
    std::vector<WitnessProblem> problems;
    size_t np = 1 + rng() % 3;
    BitVec a = random_bits(la, 0.4, rng);
    for (size_t pi = 0; pi < np; ++pi)
      problems.push_back(
          WitnessProblem::from_arrays(a, random_bits(lb, 0.4, rng)));
    MinWitnessResult res = min_witness_random_order(problems, rng);
    for (size_t pi = 0; pi < np; ++pi)
      for (size_t oi = 0; oi < problems[pi].outputs.size(); ++oi)
        REQUIRE(res.witnesses[pi][oi] ==
                brute_min_witness(problems[pi].a, problems[pi].b,
                                  problems[pi].outputs[oi], res.sigma));
  }
}

TEST_CASE("min_witness_random_order activation counts stay logarithmic") {
  std::mt19937_64 rng(29);
  u64 total = 0, small_enough = 0;
  for (int trial = 0; trial < 60; ++trial) {
    size_t la = 64, lb = 64;
    BitVec a = random_bits(la, 0.5, rng);
    BitVec b = random_bits(lb, 0.5, rng);
    WitnessProblem p = WitnessProblem::from_arrays(a, b);
    if (p.outputs.empty()) continue;
    MinWitnessResult res = min_witness_random_order({p}, rng);
    const double cap = 5.0 * std::log2(double(la + lb));
    for (u64 c : res.activation_counts[0]) {
      ++total;
      if (double(c) <= cap) ++small_enough;
    }
  }
  REQUIRE(total > 1000);
  CHECK(double(small_enough) >= 0.99 * double(total));
}

TEST_CASE("adaptive_min_witness: forced, brute-force equality, no phantom witnesses") {
  std::mt19937_64 rng(43);

  WitnessProblem uniq = WitnessProblem::from_arrays({0, 1, 0, 1}, {1, 0, 0});
  AdaptiveResult forced = adaptive_min_witness({uniq});
  for (size_t oi = 0; oi < uniq.outputs.size(); ++oi)
    CHECK(forced.witnesses[0][oi] == uniq.outputs[oi]);

  for (int trial = 0; trial < 40; ++trial) {
    size_t la = 4 + rng() % 253, lb = 4 + rng() % 253;
    size_t np = 1 + rng() % 3;
    BitVec a = random_bits(la, 0.3, rng);
    std::vector<WitnessProblem> problems;
    for (size_t pi = 0; pi < np; ++pi)
      problems.push_back(
          WitnessProblem::from_arrays(a, random_bits(lb, 0.3, rng)));
    AdaptiveResult res = adaptive_min_witness(problems);
    // sigma is a permutation of the padded universe
    std::vector<u32> sorted = res.sigma;
    std::sort(sorted.begin(), sorted.end());
    for (u32 i = 0; i < sorted.size(); ++i) REQUIRE(sorted[i] == i);
    for (size_t pi = 0; pi < np; ++pi) {
      for (size_t oi = 0; oi < problems[pi].outputs.size(); ++oi)
        REQUIRE(res.witnesses[pi][oi] ==
                brute_min_witness(problems[pi].a, problems[pi].b,
                                  problems[pi].outputs[oi], res.sigma));
      // zero-witness positions are not tracked outputs in the first place
      for (u32 out : problems[pi].outputs)
        CHECK(!brute_witnesses(problems[pi].a, problems[pi].b, out).empty());
    }
  }
}

TEST_CASE("adaptive_min_witness is deterministic") {
  std::mt19937_64 rng(47);
  BitVec a = random_bits(64, 0.3, rng);
  BitVec b = random_bits(64, 0.3, rng);
  WitnessProblem p = WitnessProblem::from_arrays(a, b);
  AdaptiveResult r1 = adaptive_min_witness({p});
  AdaptiveResult r2 = adaptive_min_witness({p});
  CHECK(r1.sigma == r2.sigma);
  CHECK(r1.witnesses == r2.witnesses);
}

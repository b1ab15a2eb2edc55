#include <random>

#include "atk/kernel.hpp"
#include "atk/oracle.hpp"
#include "atk/solvers.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace atk;
using namespace testutil;

TEST_CASE("kernel_bound") {
  CHECK(kernel::kernel_bound(Mode::knapsack, 1) == 1);
  CHECK(kernel::kernel_bound(Mode::knapsack, 1024) == 21);
  CHECK(kernel::kernel_bound(Mode::coinchange, 1024) == 21);
  CHECK(kernel::kernel_bound(Mode::residue, 7) == 3);
  CHECK(kernel::kernel_bound(Mode::residue, 8) == 4);
  CHECK(kernel::kernel_bound(Mode::knapsack, 7) == 6);  // floor(2*log2 7)+1
}

TEST_CASE("compute_layers") {
  SUBCASE("weights {3,5}, two layers") {
    Instance inst({3, 5}, 100, Mode::coinchange);
    kernel::Layers layers = kernel::compute_layers(inst, 2);
    REQUIRE(layers.v.size() == 3);
    auto set_of = [](const BitVec& v) {
      std::vector<i64> s;
      for (size_t i = 0; i < v.size(); ++i)
        if (v[i]) s.push_back(i64(i));
      return s;
    };
    CHECK(set_of(layers.v[0]) == std::vector<i64>{0});
    CHECK(set_of(layers.v[1]) == std::vector<i64>{0, 3, 5});
    CHECK(set_of(layers.v[2]) == std::vector<i64>{0, 3, 5, 6, 8, 10});
  }
  SUBCASE("no items: every layer is {0}") {
    Instance inst(std::vector<i64>{}, 10, Mode::coinchange);
    kernel::Layers layers = kernel::compute_layers(inst, 3);
    for (const BitVec& v : layers.v) {
      CHECK(v[0] == 1);
      for (size_t i = 1; i < v.size(); ++i) CHECK(v[i] == 0);
    }
  }
  SUBCASE("single unit weight: v_j = [0..j]") {
    Instance inst({1}, 10, Mode::coinchange);
    kernel::Layers layers = kernel::compute_layers(inst, 4);
    for (int j = 0; j <= 4; ++j)
      for (size_t i = 0; i < layers.v[j].size(); ++i)
        CHECK(layers.v[j][i] == (i64(i) <= j ? 1 : 0));
  }
  SUBCASE("layers are nested") {
    std::mt19937_64 rng(3);
    Instance inst(random_weights(5, 17, rng), 100, Mode::coinchange);
    kernel::Layers layers = kernel::compute_layers(inst, 6);
    for (size_t j = 1; j < layers.v.size(); ++j)
      for (size_t i = 0; i < layers.v[j].size(); ++i)
        CHECK(layers.v[j][i] >= layers.v[j - 1][i]);
  }
}

TEST_CASE("boolean kernels, coinchange: hand-checkable table") {
  Instance inst({3, 5}, 1000, Mode::coinchange);
  solvers::BooleanPipeline pipe =
      solvers::run_boolean_kernels(inst, solvers::OrderStrategy::random, 1);
  const kernel::KernelTable& kt = pipe.kernels;
  CHECK(kt.feasible(0));
  CHECK(kt.solution_at(0, inst, pipe.order).empty());
  REQUIRE(kt.feasible(6));
  CHECK(kt.solution_at(6, inst, pipe.order).multiplicity_of(0) == 2);
  REQUIRE(kt.feasible(8));
  CHECK(kt.solution_at(8, inst, pipe.order).multiplicity_of(0) == 1);
  CHECK(kt.solution_at(8, inst, pipe.order).multiplicity_of(1) == 1);
  REQUIRE(kt.feasible(10));
  CHECK(kt.solution_at(10, inst, pipe.order).multiplicity_of(1) == 2);
  CHECK(!kt.feasible(1));
  CHECK(!kt.feasible(2));
}

TEST_CASE("boolean kernels, single weight {2}: sols[2j] = j copies") {
  Instance inst({2}, 1000, Mode::coinchange);
  solvers::BooleanPipeline pipe =
      solvers::run_boolean_kernels(inst, solvers::OrderStrategy::adaptive, 0);
  const kernel::KernelTable& kt = pipe.kernels;
  for (i64 j = 0; 2 * j <= kt.extent(); ++j) {
    REQUIRE(kt.feasible(2 * j));
    CHECK(kt.size_at(2 * j) == u64(j));
    if (2 * j + 1 <= kt.extent()) CHECK(!kt.feasible(2 * j + 1));
  }
}

TEST_CASE("boolean kernels match the lexmin oracle (coinchange, both strategies)") {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 25; ++trial) {
    int n = 1 + int(rng() % 5);
    i64 u = 4 + i64(rng() % 12);
    Instance inst(random_weights(n, u, rng), 4000, Mode::coinchange);
    auto strategy = (trial % 2) ? solvers::OrderStrategy::adaptive
                                : solvers::OrderStrategy::random;
    solvers::BooleanPipeline pipe =
        solvers::run_boolean_kernels(inst, strategy, rng());
    const int k = pipe.kernels.bound();
    SolutionTable want =
        oracle::dp_lexmin_solutions(inst, pipe.order, pipe.kernels.extent());
    for (i64 pos = 0; pos <= pipe.kernels.extent(); ++pos) {
      // table coverage = positions whose minimum count is at most k; for
      // coinchange the lexmin solution is a minimum-count one
      const bool in_table = want.sols[pos] && want.sols[pos]->size <= u64(k);
      REQUIRE(pipe.kernels.feasible(pos) == in_table);
      if (!in_table) continue;
      Solution got = pipe.kernels.solution_at(pos, inst, pipe.order);
      REQUIRE(got == *want.sols[pos]);
    }
  }
}

TEST_CASE("boolean kernels, residue mode: lex-smallest at kernel positions") {
  std::mt19937_64 rng(67);
  for (int trial = 0; trial < 20; ++trial) {
    int n = 1 + int(rng() % 5);
    i64 u = 4 + i64(rng() % 12);
    Instance inst(random_weights(n, u, rng), 4000, Mode::residue);
    auto strategy = (trial % 2) ? solvers::OrderStrategy::adaptive
                                : solvers::OrderStrategy::random;
    solvers::BooleanPipeline pipe =
        solvers::run_boolean_kernels(inst, strategy, rng());
    const int k = pipe.kernels.bound();
    SolutionTable want =
        oracle::dp_lexmin_solutions(inst, pipe.order, pipe.kernels.extent());
    // table coverage = positions whose minimum count is at most k
    Instance counting(inst.weights, pipe.kernels.extent(), Mode::coinchange);
    std::vector<i128> neg_counts = oracle::dp_values(counting);
    for (i64 pos = 0; pos <= pipe.kernels.extent(); ++pos) {
      const bool in_table =
          !is_neg_inf(neg_counts[pos]) && -neg_counts[pos] <= k;
      REQUIRE(pipe.kernels.feasible(pos) == in_table);
      if (!in_table) continue;
      Solution got = pipe.kernels.solution_at(pos, inst, pipe.order);
      CHECK(got.sum == pos);  // always a valid solution
      if (want.sols[pos]->size <= u64(k))  // kernel: must be the lexmin one
        REQUIRE(got == *want.sols[pos]);
    }
  }
}

TEST_CASE("kernel solutions satisfy the product and support bounds") {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 15; ++trial) {
    int n = 1 + int(rng() % 6);
    Instance inst(random_weights(n, 20, rng), 4000, Mode::coinchange);
    solvers::BooleanPipeline pipe = solvers::run_boolean_kernels(
        inst, solvers::OrderStrategy::random, rng());
    for (i64 pos = 0; pos <= pipe.kernels.extent(); ++pos) {
      if (!pipe.kernels.feasible(pos)) continue;
      Solution s = pipe.kernels.solution_at(pos, inst, pipe.order);
      u128 prod = 1;
      for (auto& e : s.entries) prod *= e.mult + 1;
      CHECK(prod <= u128(s.sum) + 1);
      CHECK((u128(1) << s.entries.size()) <= u128(s.sum) + 1);
    }
  }
}

TEST_CASE("knapsack kernels: decode example and oracle equality") {
  SUBCASE("items (2,1) and (3,1)") {
    Instance inst({2, 3}, {1, 1}, 1000);
    LexOrder id = LexOrder::identity(2);
    kernel::KernelTable kt = kernel::compute_kernels_knapsack(inst, id);
    REQUIRE(kt.feasible(2));
    CHECK(kt.value_at(2) == 1);
    CHECK(kt.solution_at(2, inst, id).multiplicity_of(0) == 1);
    REQUIRE(kt.feasible(3));
    CHECK(kt.value_at(3) == 1);
    CHECK(kt.solution_at(3, inst, id).multiplicity_of(1) == 1);
    REQUIRE(kt.feasible(0));
    CHECK(kt.value_at(0) == 0);
    CHECK(kt.solution_at(0, inst, id).empty());
  }
  SUBCASE("random instances equal the lexmin oracle") {
    std::mt19937_64 rng(83);
    for (int trial = 0; trial < 25; ++trial) {
      int n = 1 + int(rng() % 6);
      i64 u = 3 + i64(rng() % 28);
      std::vector<i64> w = random_weights(n, u, rng);
      std::vector<i64> p(n);
      for (auto& x : p) x = i64(rng() % 41) - 20;
      Instance inst(w, p, 4000);
      LexOrder id = LexOrder::identity(u32(n));
      kernel::KernelTable kt = kernel::compute_kernels_knapsack(inst, id);
      const int k = kt.bound();
      SolutionTable want = oracle::dp_lexmin_solutions(inst, id, kt.extent());
      for (i64 pos = 0; pos <= kt.extent(); ++pos) {
        if (!want.sols[pos]) {
          CHECK(!kt.feasible(pos));
          continue;
        }
        // the table can only miss positions needing more than k items
        if (!kt.feasible(pos)) {
          bool reachable_small = false;
          for (const Solution& s :
               enumerate_solutions(inst, pos, id))
            if (s.size <= u64(k)) reachable_small = true;
          CHECK(!reachable_small);
          continue;
        }
        if (want.sols[pos]->size <= u64(k))
          REQUIRE(kt.solution_at(pos, inst, id) == *want.sols[pos]);
      }
    }
  }
}

TEST_CASE("knapsack kernel values equal best-value-size-capped oracle") {
  std::mt19937_64 rng(89);
  for (int trial = 0; trial < 15; ++trial) {
    int n = 1 + int(rng() % 4);
    i64 u = 3 + i64(rng() % 10);
    std::vector<i64> w = random_weights(n, u, rng);
    std::vector<i64> p(n);
    for (auto& x : p) x = i64(rng() % 21) - 10;
    Instance inst(w, p, 4000);
    LexOrder id = LexOrder::identity(u32(n));
    kernel::KernelTable kt = kernel::compute_kernels_knapsack(inst, id);
    const int k = kt.bound();
    // bounded-size DP oracle: best value with at most k items
    const i64 extent = kt.extent();
    std::vector<i128> best(size_t(extent) + 1, kNegInf);
    best[0] = 0;
    for (int step = 0; step < k; ++step) {
      std::vector<i128> next = best;
      for (i64 j = 0; j <= extent; ++j) {
        if (is_neg_inf(best[j])) continue;
        for (int i = 0; i < n; ++i) {
          i64 jn = j + w[i];
          if (jn > extent) continue;
          next[jn] = std::max(next[jn], best[j] + p[i]);
        }
      }
      best = std::move(next);
    }
    for (i64 j = 0; j <= extent; ++j) {
      CHECK(is_neg_inf(best[j]) == !kt.feasible(j));
      if (!is_neg_inf(best[j])) CHECK(kt.value_at(j) == best[j]);
    }
  }
}

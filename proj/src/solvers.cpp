#include "atk/solvers.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <random>

#include "atk/propagation.hpp"
#include "atk/witness.hpp"

namespace atk {
namespace solvers {
namespace {

LexOrder item_order_from_weight_ranks(const Instance& inst,
                                      const std::vector<u32>& weight_rank) {
  std::vector<u32> items(inst.n());
  std::iota(items.begin(), items.end(), 0u);
  std::stable_sort(items.begin(), items.end(), [&](u32 a, u32 b) {
    return weight_rank[inst.weights[a]] < weight_rank[inst.weights[b]];
  });
  return LexOrder::from_permutation(std::move(items));
}

std::vector<u32> rank_from_sigma(const std::vector<u32>& sigma) {
  std::vector<u32> rank(sigma.size());
  for (u32 r = 0; r < sigma.size(); ++r) rank[sigma[r]] = r;
  return rank;
}

std::vector<i128> values_from_table(const SolutionTable& table) {
  std::vector<i128> v(table.sols.size(), kNegInf);
  for (size_t i = 0; i < table.sols.size(); ++i)
    if (table.sols[i]) v[i] = table.sols[i]->value;
  return v;
}

// Tracked outputs of one layer: newly feasible positions under
// first-activation, every feasible position under per-layer re-derivation.
std::vector<u32> collect_layer_outputs(const std::vector<u64>& counts,
                                       const BitVec& v_prev, i64 extent,
                                       kernel::UpdateSemantics semantics) {
  std::vector<u32> outputs;
  const size_t hi = std::min(counts.size(), size_t(extent) + 1);
  for (size_t i = 1; i < hi; ++i) {
    if (counts[i] == 0) continue;
    if (semantics == kernel::UpdateSemantics::first_activation && v_prev[i])
      continue;
    outputs.push_back(u32(i));
  }
  return outputs;
}

}  // namespace

std::optional<OrderStrategy> strategy_from_name(const std::string& s) {
  if (s == "random") return OrderStrategy::random;
  if (s == "adaptive") return OrderStrategy::adaptive;
  if (s == "identity") return OrderStrategy::identity;
  return std::nullopt;
}

std::string strategy_name(OrderStrategy s) {
  switch (s) {
    case OrderStrategy::random: return "random";
    case OrderStrategy::adaptive: return "adaptive";
    case OrderStrategy::identity: return "identity";
  }
  return "?";
}

BooleanPipeline run_boolean_kernels(const Instance& inst,
                                    OrderStrategy strategy, u64 seed) {
  ATK_CHECK(inst.mode != Mode::knapsack,
            "boolean kernels serve the unweighted modes");
  if (strategy == OrderStrategy::identity)
    throw std::invalid_argument(
        "identity order requires valued kernels; use random or adaptive");

  const auto semantics = inst.mode == Mode::residue
                             ? kernel::UpdateSemantics::overwrite_each_layer
                             : kernel::UpdateSemantics::first_activation;
  BooleanPipeline out;
  out.dw = dedup_weights(inst);
  const int k = kernel::kernel_bound(inst.mode, inst.u);
  const i64 extent = i64(k) * inst.u;
  ATK_CHECK(extent < (i64(1) << 31), "kernel extent too large");
  const size_t len = size_t(extent) + 1;

  kernel::BooleanKernelBuilder builder(inst, out.dw, k, semantics);
  std::vector<BitVec> layers;
  BitVec v(len, 0);
  v[0] = 1;
  layers.push_back(v);

  if (out.dw.weights.empty()) {
    layers.resize(size_t(k) + 1, v);
    for (int j = 1; j <= k; ++j) builder.apply_layer({});
    out.kernels = builder.finish(std::move(layers));
    out.order = LexOrder::identity(u32(inst.n()));
    return out;
  }

  BitVec f(size_t(inst.u) + 1, 0);
  for (i64 w : out.dw.weights) f[w] = 1;
  CachedBoolConvolver conv(f, len);
  std::mt19937_64 rng(seed);

  auto sparse_counts = [](const std::vector<u64>& counts,
                          const std::vector<u32>& outputs) {
    std::vector<u64> c;
    c.reserve(outputs.size());
    for (u32 o : outputs) c.push_back(counts[o]);
    return c;
  };

  if (strategy == OrderStrategy::random) {
    witness::MinWitnessSession session(size_t(inst.u) + 1, rng);
    for (int j = 1; j <= k; ++j) {
      std::vector<u64> counts = conv.counts_against(v);
      witness::WitnessProblem problem;
      problem.outputs = collect_layer_outputs(counts, v, extent, semantics);
      problem.counts = sparse_counts(counts, problem.outputs);
      problem.a = f;
      problem.b = v;
      const std::vector<u32> wit = session.resolve(problem);
      kernel::LayerWitnessList pairs(problem.outputs.size());
      for (size_t i = 0; i < pairs.size(); ++i)
        pairs[i] = {problem.outputs[i], wit[i]};
      builder.apply_layer(pairs);
      const size_t hi = std::min(counts.size(), len);
      for (size_t i = 0; i < hi; ++i)
        if (counts[i]) v[i] = 1;
      layers.push_back(v);
    }
    std::vector<u32> weight_rank(size_t(inst.u) + 1);
    for (i64 w = 0; w <= inst.u; ++w) weight_rank[w] = session.rank_of(u32(w));
    out.order = item_order_from_weight_ranks(inst, weight_rank);
  } else {
    std::vector<witness::WitnessProblem> problems;
    problems.reserve(k);
    for (int j = 1; j <= k; ++j) {
      std::vector<u64> counts = conv.counts_against(v);
      witness::WitnessProblem problem;
      problem.outputs = collect_layer_outputs(counts, v, extent, semantics);
      problem.counts = sparse_counts(counts, problem.outputs);
      problem.a = f;
      problem.b = v;
      problems.push_back(std::move(problem));
      const size_t hi = std::min(counts.size(), len);
      for (size_t i = 0; i < hi; ++i)
        if (counts[i]) v[i] = 1;
      layers.push_back(v);
    }
    const witness::AdaptiveResult ares = witness::adaptive_min_witness(problems);
    for (int j = 0; j < k; ++j) {
      kernel::LayerWitnessList pairs(problems[j].outputs.size());
      for (size_t i = 0; i < pairs.size(); ++i)
        pairs[i] = {problems[j].outputs[i], ares.witnesses[j][i]};
      builder.apply_layer(pairs);
    }
    const std::vector<u32> rank = rank_from_sigma(ares.sigma);
    std::vector<u32> weight_rank(rank.begin(),
                                 rank.begin() + inst.u + 1);
    out.order = item_order_from_weight_ranks(inst, weight_rank);
  }
  out.kernels = builder.finish(std::move(layers));
  return out;
}

CoinChangeDetailed solve_coinchange_detailed(const Instance& inst,
                                             OrderStrategy strategy, u64 seed) {
  if (inst.mode != Mode::coinchange)
    throw std::invalid_argument("solve_coinchange needs coinchange mode");
  CoinChangeDetailed out;
  BooleanPipeline pipe = run_boolean_kernels(inst, strategy, seed);
  out.order = std::move(pipe.order);
  const i64 extent = propagation::propagation_extent(inst);
  SolutionTable seeded =
      propagation::seed_from_kernels(pipe.kernels, inst, out.order, extent);
  out.kernels = std::move(pipe.kernels);
  out.table = propagation::propagate(seeded, inst, out.order);
  std::vector<i128> values = values_from_table(out.table);
  propagation::extend_tail(values, inst, out.order);
  out.counts.resize(values.size());
  for (size_t i = 0; i < values.size(); ++i)
    out.counts[i] = is_neg_inf(values[i]) ? -1 : i64(-values[i]);
  return out;
}

std::vector<i64> solve_coinchange(const Instance& inst, OrderStrategy strategy,
                                  u64 seed) {
  return solve_coinchange_detailed(inst, strategy, seed).counts;
}

ResidueDetailed solve_residue_table_detailed(const Instance& inst,
                                             OrderStrategy strategy, u64 seed) {
  if (inst.mode != Mode::residue)
    throw std::invalid_argument("solve_residue_table needs residue mode");
  if (inst.n() < 1)
    throw std::invalid_argument("residue table needs at least one weight");
  ResidueDetailed out;
  BooleanPipeline pipe = run_boolean_kernels(inst, strategy, seed);
  out.order = std::move(pipe.order);
  out.table = propagation::propagate_modular(pipe.kernels, inst, out.order);
  out.sums.resize(out.table.size());
  for (size_t r = 0; r < out.table.size(); ++r)
    out.sums[r] = out.table[r] ? out.table[r]->sum : -1;
  return out;
}

std::vector<i64> solve_residue_table(const Instance& inst,
                                     OrderStrategy strategy, u64 seed) {
  return solve_residue_table_detailed(inst, strategy, seed).sums;
}

KnapsackDetailed solve_knapsack_detailed(const Instance& inst,
                                         const MaxPlusBackend* backend) {
  if (inst.mode != Mode::knapsack)
    throw std::invalid_argument("solve_knapsack needs knapsack mode");
  KnapsackDetailed out;
  out.order = LexOrder::identity(u32(inst.n()));
  out.kernels = kernel::compute_kernels_knapsack(inst, out.order, backend);
  const i64 extent = propagation::propagation_extent(inst);
  SolutionTable seeded =
      propagation::seed_from_kernels(out.kernels, inst, out.order, extent);
  out.table = propagation::propagate(seeded, inst, out.order);
  out.values = values_from_table(out.table);
  propagation::extend_tail(out.values, inst, out.order);
  return out;
}

std::vector<i128> solve_knapsack(const Instance& inst,
                                 const MaxPlusBackend* backend) {
  return solve_knapsack_detailed(inst, backend).values;
}

BitVec solve_subsetsum(const Instance& inst) {
  if (inst.mode != Mode::subsetsum)
    throw std::invalid_argument("solve_subsetsum needs subsetsum mode");
  const size_t len = size_t(inst.t) + 1;
  BitVec feas(len, 0);
  feas[0] = 1;
  for (i64 w : inst.weights)
    if (w <= inst.t) feas[w] = 1;
  const int iters = int(std::bit_width(u64(std::max<i64>(inst.t, 1)))) + 1;
  for (int it = 0; it < iters; ++it) {
    BoolConvolution sq = bool_convolve(feas, feas);
    const size_t hi = std::min(len, sq.feasible.size());
    for (size_t i = 0; i < hi; ++i)
      if (sq.feasible[i]) feas[i] = 1;
  }
  return feas;
}

ValArray maxplus_via_knapsack(const std::vector<i64>& a,
                              const std::vector<i64>& b) {
  ATK_CHECK(a.size() == b.size() && !a.empty(),
            "reduction expects equal nonempty arrays");
  const i64 n = i64(a.size());
  i64 m = 0;
  for (i64 v : a) m = std::max(m, std::abs(v));
  for (i64 v : b) m = std::max(m, std::abs(v));
  const i64 x = 6 * (m + 1);

  std::vector<i64> weights, profits;
  for (i64 i = 1; i <= n; ++i) {
    weights.push_back(4 * n + i);
    profits.push_back(a[i - 1] + x);
    weights.push_back(2 * n + i);
    profits.push_back(b[i - 1]);
  }
  Instance inst(std::move(weights), std::move(profits), 8 * n);
  const std::vector<i128> values = solve_knapsack(inst);

  ValArray out(size_t(2 * n - 1));
  for (i64 s = 0; s <= 2 * n - 2; ++s) {
    const i128 v = values[size_t(6 * n + s + 2)];
    ATK_CHECK(!is_neg_inf(v), "reduction target unexpectedly infeasible");
    out[s] = v - x;
  }
  return out;
}

}  // namespace solvers
}  // namespace atk

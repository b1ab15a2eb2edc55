#include "atk/kernel.hpp"

#include <algorithm>
#include <bit>

namespace atk {
namespace kernel {
namespace {

constexpr u32 kUnset = u32(-1);

}  // namespace

int kernel_bound(Mode mode, i64 u) {
  ATK_CHECK(u >= 1, "kernel_bound: u must be positive");
  if (mode == Mode::residue) return int(std::bit_width(u64(u)));
  // floor(2*log2(u)) + 1 == floor(log2(u^2)) + 1
  u128 sq = u128(u) * u128(u);
  int fl = 0;
  while (sq > 1) {
    sq >>= 1;
    ++fl;
  }
  return fl + 1;
}

Layers compute_layers(const Instance& inst, int k) {
  ATK_CHECK(inst.mode != Mode::knapsack, "layers are for unweighted modes");
  Layers out;
  out.extent = i64(k) * inst.u;
  const size_t len = size_t(out.extent) + 1;
  DistinctWeights dw = dedup_weights(inst);

  BitVec v(len, 0);
  v[0] = 1;
  out.v.push_back(v);
  if (dw.weights.empty() || k == 0) {
    out.v.resize(size_t(k) + 1, v);
    return out;
  }

  BitVec f(size_t(inst.u) + 1, 0);
  for (i64 w : dw.weights) f[w] = 1;
  CachedBoolConvolver conv(f, len);
  for (int j = 1; j <= k; ++j) {
    std::vector<u64> counts = conv.counts_against(v);
    for (size_t i = 0; i < len && i < counts.size(); ++i)
      if (counts[i]) v[i] = 1;
    out.v.push_back(v);
  }
  return out;
}

bool KernelTable::feasible(i64 pos) const {
  if (pos < 0 || pos > extent_) return false;
  if (!chain_item_.empty()) return pos == 0 || chain_item_[pos] != kUnset;
  return bool(sols_[pos]);
}

u64 KernelTable::size_at(i64 pos) const {
  ATK_CHECK(feasible(pos), "size_at on infeasible position");
  if (!chain_item_.empty()) return pos == 0 ? 0 : chain_size_[pos];
  return sols_[pos]->size;
}

i128 KernelTable::value_at(i64 pos) const {
  if (!feasible(pos)) return kNegInf;
  if (!chain_item_.empty())
    return mode_ == Mode::coinchange ? -i128(size_at(pos)) : i128(0);
  return values_[pos];
}

Solution KernelTable::solution_at(i64 pos, const Instance& inst,
                                  const LexOrder& order) const {
  ATK_CHECK(feasible(pos), "solution_at on infeasible position");
  if (chain_item_.empty()) return *sols_[pos];
  Solution s;
  i64 p = pos;
  while (p != 0) {
    const u32 item = chain_item_[p];
    s = solution_add(s, item, inst, order);
    p -= weights_[item];
    ATK_CHECK(p >= 0 && feasible(p), "kernel chain broken");
  }
  return s;
}

BooleanKernelBuilder::BooleanKernelBuilder(const Instance& inst,
                                           const DistinctWeights& dw, int k,
                                           UpdateSemantics semantics)
    : inst_(inst), dw_(dw), semantics_(semantics) {
  table_.mode_ = inst.mode;
  table_.k_ = k;
  table_.extent_ = i64(k) * inst.u;
  table_.chain_item_.assign(size_t(table_.extent_) + 1, kUnset);
  table_.chain_size_.assign(size_t(table_.extent_) + 1, 0);
  table_.weights_.assign(inst.weights.begin(), inst.weights.end());
  item_at_weight_.assign(size_t(inst.u) + 1, kUnset);
  for (size_t w = 0; w < dw.weights.size(); ++w)
    item_at_weight_[dw.weights[w]] = dw.item_of_weight[w];
}

void BooleanKernelBuilder::apply_layer(const LayerWitnessList& witnesses) {
  ++layers_applied_;
  ATK_CHECK(layers_applied_ <= table_.k_, "more layers than the kernel bound");
  // Re-derivation reads same-layer predecessors, so positions go ascending.
  LayerWitnessList sorted = witnesses;
  std::sort(sorted.begin(), sorted.end());
  for (auto [pos, weight] : sorted) {
    ATK_CHECK(i64(pos) <= table_.extent_ && i64(weight) <= inst_.u &&
                  item_at_weight_[weight] != kUnset,
              "layer witness out of range");
    const i64 pred = i64(pos) - i64(weight);
    ATK_CHECK(pred >= 0 && table_.feasible(pred),
              "layer witness has infeasible predecessor");
    if (semantics_ == UpdateSemantics::first_activation &&
        table_.chain_item_[pos] != kUnset)
      continue;
    ATK_CHECK(pos != 0, "position 0 never receives a witness");
    table_.chain_item_[pos] = item_at_weight_[weight];
    table_.chain_size_[pos] = (pred == 0 ? 0 : table_.chain_size_[pred]) + 1;
  }
}

KernelTable BooleanKernelBuilder::finish(std::vector<BitVec> layers) {
  table_.layers_ = std::move(layers);
  return std::move(table_);
}

KernelTable compute_kernels_boolean(
    const Instance& inst, const DistinctWeights& dw, const Layers& layers,
    const std::vector<LayerWitnessList>& witnesses_per_layer,
    UpdateSemantics semantics) {
  const int k = int(layers.v.size()) - 1;
  ATK_CHECK(int(witnesses_per_layer.size()) == k,
            "need one witness list per layer");
  BooleanKernelBuilder builder(inst, dw, k, semantics);
  for (const auto& lw : witnesses_per_layer) builder.apply_layer(lw);
  return builder.finish(layers.v);
}

KernelTable compute_kernels_knapsack(const Instance& inst,
                                     const LexOrder& order,
                                     const MaxPlusBackend* backend) {
  ATK_CHECK(inst.mode == Mode::knapsack, "knapsack kernels need profits");
  const i64 n = inst.n();
  const int k = kernel_bound(Mode::knapsack, inst.u);
  const i64 extent = i64(k) * inst.u;

  KernelTable table;
  table.mode_ = Mode::knapsack;
  table.k_ = k;
  table.extent_ = extent;
  table.sols_.assign(size_t(extent) + 1, std::nullopt);
  table.values_.assign(size_t(extent) + 1, kNegInf);
  table.sols_[0] = Solution{};
  table.values_[0] = 0;
  if (n == 0) return table;

  // Weight cell keeps the encoding maximum over items sharing the weight:
  // larger profit first, then smaller rank.
  ValArray f_enc(size_t(inst.u) + 1, kNegInf);
  for (u32 r = 0; r < u32(n); ++r) {
    const u32 item = order.perm[r];
    const i64 w = inst.weights[item];
    const i128 enc = i128(n + 1) * inst.profits[item] - i128(r + 1);
    if (enc > f_enc[w]) f_enc[w] = enc;
  }

  const i128 value_cap = i128(1) << 100;  // encoding must stay within i128
  for (int round = 1; round <= k; ++round) {
    ValArray v_enc(size_t(extent) + 1, kNegInf);
    for (i64 i = 0; i <= extent; ++i) {
      if (is_neg_inf(table.values_[i])) continue;
      ATK_CHECK(table.values_[i] < value_cap && -table.values_[i] < value_cap,
                "knapsack encoding overflow");
      v_enc[i] = i128(n + 1) * table.values_[i];
    }
    const ValArray conv = maxplus_convolve(v_enc, f_enc, backend);
    const std::vector<std::optional<Solution>> snapshot = table.sols_;
    for (i64 i = 1; i <= extent; ++i) {
      if (size_t(i) >= conv.size() || is_neg_inf(conv[i])) continue;
      const i128 enc = conv[i];
      i128 rem = (-enc) % i128(n + 1);
      if (rem < 0) rem += n + 1;
      ATK_CHECK(rem >= 1 && rem <= n, "witness rank decode out of range");
      const u32 rank = u32(rem) - 1;
      const i128 val = (enc + rem) / i128(n + 1);
      ATK_CHECK((enc + rem) % i128(n + 1) == 0, "witness decode misaligned");
      const u32 item = order.perm[rank];
      const i64 w = inst.weights[item];
      ATK_CHECK(i - w >= 0 && snapshot[i - w], "decoded witness has no predecessor");
      table.values_[i] = val;
      table.sols_[i] = solution_add(*snapshot[i - w], item, inst, order);
      ATK_CHECK(table.sols_[i]->value == val, "decoded value mismatch");
    }
  }
  return table;
}

}  // namespace kernel
}  // namespace atk

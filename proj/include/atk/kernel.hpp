#pragma once

#include <utility>
#include <vector>

#include "atk/convolution.hpp"
#include "atk/core.hpp"

namespace atk {
namespace kernel {

/// Kernel size bound: floor(2*log2(u)) + 1 for the valued/counted modes,
/// ceil(log2(u+1)) for residue tables.
int kernel_bound(Mode mode, i64 u);

/// Feasibility layers over [0, k*u]: v[j] marks the sums reachable with at
/// most j items (distinct weights; unweighted modes only).
struct Layers {
  std::vector<BitVec> v;  // v[0] .. v[k]
  i64 extent = 0;         // k*u
};
Layers compute_layers(const Instance& inst, int k);

enum class UpdateSemantics {
  /// Freeze each position at the first layer where it becomes feasible.
  /// Required for coinchange: a later re-derivation could replace a
  /// minimum-count solution with a larger-count one.
  first_activation,
  /// Re-derive every feasible position at every layer (last write wins).
  /// Required for residue tables, where any solution is optimal-valued and
  /// the table must converge to the lex-smallest solution overall.
  overwrite_each_layer,
};

/// Minimum witnesses for one layer: (position, witness weight) pairs.
using LayerWitnessList = std::vector<std::pair<u32, u32>>;

/// Phase-one output. Boolean modes store a compact chain per position
/// (witness item + solution size); knapsack mode stores full solutions.
class KernelTable {
 public:
  Mode mode() const { return mode_; }
  int bound() const { return k_; }
  i64 extent() const { return extent_; }

  bool feasible(i64 pos) const;
  u64 size_at(i64 pos) const;    // total multiplicity of the stored solution
  i128 value_at(i64 pos) const;  // kNegInf when infeasible
  /// Materialize the stored solution (chain walk for boolean modes).
  Solution solution_at(i64 pos, const Instance& inst,
                       const LexOrder& order) const;

  const std::vector<BitVec>& layers() const { return layers_; }

 private:
  friend class BooleanKernelBuilder;
  friend KernelTable compute_kernels_knapsack(const Instance&, const LexOrder&,
                                              const MaxPlusBackend*);
  Mode mode_ = Mode::subsetsum;
  int k_ = 0;
  i64 extent_ = 0;
  // boolean representation: per position, the witness item and solution size
  std::vector<u32> chain_item_;
  std::vector<u32> chain_size_;
  std::vector<i64> weights_;  // item weights, for chain walking
  // knapsack representation
  std::vector<std::optional<Solution>> sols_;
  std::vector<i128> values_;
  std::vector<BitVec> layers_;
};

/// Streaming construction: layers are applied one at a time so that a whole
/// stack of per-layer witness lists never has to be materialized.
class BooleanKernelBuilder {
 public:
  BooleanKernelBuilder(const Instance& inst, const DistinctWeights& dw, int k,
                       UpdateSemantics semantics);
  /// Apply layer j's minimum witnesses (called with j = 1..k in order).
  void apply_layer(const LayerWitnessList& witnesses);
  KernelTable finish(std::vector<BitVec> layers);

 private:
  const Instance& inst_;
  const DistinctWeights& dw_;
  UpdateSemantics semantics_;
  std::vector<u32> item_at_weight_;  // weight value -> item, or unset
  KernelTable table_;
  int layers_applied_ = 0;
};

/// Spec-shaped wrapper over the builder: all layers' witnesses at once.
KernelTable compute_kernels_boolean(
    const Instance& inst, const DistinctWeights& dw, const Layers& layers,
    const std::vector<LayerWitnessList>& witnesses_per_layer,
    UpdateSemantics semantics);

/// Valued kernels via (max,+) convolution on (n+1)-scaled arrays; the
/// remainder mod n+1 carries the rank of the minimum witness, so optimum and
/// witness come out of one convolution.
KernelTable compute_kernels_knapsack(const Instance& inst,
                                     const LexOrder& order,
                                     const MaxPlusBackend* backend = nullptr);

}  // namespace kernel
}  // namespace atk

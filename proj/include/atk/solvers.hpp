#pragma once

#include <optional>
#include <vector>

#include "atk/convolution.hpp"
#include "atk/core.hpp"
#include "atk/kernel.hpp"

namespace atk {
namespace solvers {

enum class OrderStrategy { random, adaptive, identity };

std::optional<OrderStrategy> strategy_from_name(const std::string& s);
std::string strategy_name(OrderStrategy s);

/// Phase one for the unweighted modes: distinct weights, feasibility layers,
/// minimum witnesses under the chosen order strategy, kernel table.
struct BooleanPipeline {
  DistinctWeights dw;
  LexOrder order;  // item-level order induced by the emitted universe order
  kernel::KernelTable kernels;
};
BooleanPipeline run_boolean_kernels(const Instance& inst,
                                    OrderStrategy strategy, u64 seed);

struct CoinChangeDetailed {
  LexOrder order;
  kernel::KernelTable kernels;
  SolutionTable table;      // solutions over [0, min(t, u^2)]
  std::vector<i64> counts;  // [0, t]; -1 = infeasible
};

/// Min coin counts for every target in [0, t]; -1 where infeasible.
std::vector<i64> solve_coinchange(const Instance& inst, OrderStrategy strategy,
                                  u64 seed);
CoinChangeDetailed solve_coinchange_detailed(const Instance& inst,
                                             OrderStrategy strategy, u64 seed);

struct ResidueDetailed {
  LexOrder order;
  std::vector<std::optional<Solution>> table;  // per residue class
  std::vector<i64> sums;                       // -1 = class infeasible
};

/// Minimum feasible sum per residue class mod w_1 (the first input weight).
std::vector<i64> solve_residue_table(const Instance& inst,
                                     OrderStrategy strategy, u64 seed);
ResidueDetailed solve_residue_table_detailed(const Instance& inst,
                                             OrderStrategy strategy, u64 seed);

struct KnapsackDetailed {
  LexOrder order;
  kernel::KernelTable kernels;
  SolutionTable table;        // solutions over [0, min(t, u^2)]
  std::vector<i128> values;   // [0, t]; kNegInf = infeasible
};

/// Max value per target in [0, t]; kNegInf where infeasible. The order is
/// fixed to identity (the encoded kernels find minimum witnesses for any
/// fixed order).
std::vector<i128> solve_knapsack(const Instance& inst,
                                 const MaxPlusBackend* backend = nullptr);
KnapsackDetailed solve_knapsack_detailed(const Instance& inst,
                                         const MaxPlusBackend* backend = nullptr);

/// Feasibility bitmap over [0, t] by repeated squaring of the feasible set.
BitVec solve_subsetsum(const Instance& inst);

/// (max,+) convolution computed through the all-target knapsack solver:
/// items (4n+i, a_i + x) and (2n+i, b_i), x = 6*(max|entry|+1); the value at
/// weight 6n+s+2 minus x is the convolution at s. Library self-test.
ValArray maxplus_via_knapsack(const std::vector<i64>& a,
                              const std::vector<i64>& b);

}  // namespace solvers
}  // namespace atk

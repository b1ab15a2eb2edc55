#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "atk/core.hpp"
#include "atk/kernel.hpp"

namespace atk {
namespace propagation {

/// Extent of the directly-propagated range: min(t, u^2). Targets beyond u^2
/// are served by the tail extension.
i64 propagation_extent(const Instance& inst);

/// Witness propagation: ascending scan over [0, min(t,u^2)]; every present
/// solution challenges each one-more-copy extension of its support; a
/// challenge wins on better value, or equal value and lex-smaller.
/// The input table carries the kernel solutions at their sums (entries beyond
/// the result extent are ignored; they can only reach even larger targets).
SolutionTable propagate(const SolutionTable& seeded, const Instance& inst,
                        const LexOrder& order);

/// Convenience: place kernel-table solutions into a SolutionTable sized for
/// propagation.
SolutionTable seed_from_kernels(const kernel::KernelTable& kernels,
                                const Instance& inst, const LexOrder& order,
                                i64 extent);

/// Modular variant for residue tables: per residue class mod w_1 keep the
/// (sum, lex)-smallest solution; classes are finalized in ascending (sum, ...)
/// order off a lazy binary heap and relax their one-more-copy extensions.
/// Result[r].sum is the minimum feasible sum congruent to r; absent classes
/// are infeasible.
std::vector<std::optional<Solution>> propagate_modular(
    const kernel::KernelTable& kernels, const Instance& inst,
    const LexOrder& order);

/// Values-only tail: s = the item with the maximum profit/weight ratio (ties:
/// smaller weight, then smaller rank). For j beyond the head, value[j] =
/// value[j - w_s] + p_s; every feasible j > u^2 has a feasible j - w_s.
void extend_tail(std::vector<i128>& values, const Instance& inst,
                 const LexOrder& order);

/// Streaming form of the tail for very large t: calls sink(j, value) for
/// every j in (head extent, t] keeping only a w_s-sized window in memory.
void extend_tail_stream(const std::vector<i128>& head, const Instance& inst,
                        const LexOrder& order,
                        const std::function<void(i64, i128)>& sink);

/// The item used by the tail extension (index into inst.weights).
u32 tail_item(const Instance& inst, const LexOrder& order);

}  // namespace propagation
}  // namespace atk

#pragma once

#include <vector>

#include "atk/core.hpp"

namespace atk {
namespace oracle {

/// Classic unbounded DP: value[j] = max_i (value[j - w_i] + p_i), value[0] = 0,
/// kNegInf where infeasible. O(n*t); reference for every solver.
std::vector<i128> dp_values(const Instance& inst);

/// Exact lexicographically-smallest optimal solutions over [0, extent]
/// (extent = inst.t when negative). Built by direct (value, lex) minimization
/// over all one-item extensions; independent of the two-phase pipeline.
SolutionTable dp_lexmin_solutions(const Instance& inst, const LexOrder& order,
                                  i64 extent = -1);

/// Minimum feasible sum per residue class mod w_1 via shortest paths on the
/// residue graph (edges r -> (r + w_i) mod w_1 of length w_i). -1 = infeasible.
std::vector<i64> dijkstra_residues(const Instance& inst);

}  // namespace oracle
}  // namespace atk

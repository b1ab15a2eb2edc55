#pragma once

#include <optional>
#include <random>
#include <vector>

#include "atk/types.hpp"

namespace atk {
namespace witness {

/// One boolean convolution whose outputs need witnesses. Witness indices live
/// on the `a` side: k is a witness of output i iff a[k] = 1 and b[i-k] = 1.
/// Counts are exact and tracked per output (sparse; dense count arrays for a
/// whole stack of problems would dominate memory at scale).
struct WitnessProblem {
  BitVec a;
  BitVec b;
  std::vector<u32> outputs;  // tracked output indices, counts[.] > 0
  std::vector<u64> counts;   // aligned with outputs; exact witness counts

  size_t out_len() const { return a.size() + b.size() - 1; }

  /// Build with counts from bool_convolve; outputs = every index with
  /// positive count (or the given subset, which must have positive counts).
  static WitnessProblem from_arrays(BitVec a, BitVec b);
  static WitnessProblem from_arrays(BitVec a, BitVec b,
                                    std::vector<u32> outputs);
};

/// Distinct witnesses accumulated per output, aligned with problem.outputs.
/// Every inserted index k is verified against a and b.
struct WitnessSets {
  std::vector<std::vector<u32>> sets;
};

/// For each tracked output, a uniformly random element of its witness set.
/// Geometric subsampling: at density level r each support element of `a`
/// survives with probability 2^-r; where the surviving count is exactly one,
/// the index sum names a candidate, which is verified and accepted. Retries
/// until every tracked output has a sample.
std::vector<u32> sample_witnesses(const WitnessProblem& p, std::mt19937_64& rng);

/// Deterministically find min(|x[i] & restriction|, k) distinct witnesses per
/// tracked output, all inside `restriction` (sorted universe indices).
/// Recursive range splitting; descends only into halves that still hold
/// needed witnesses. `only_outputs` (indices into p.outputs) narrows the work.
WitnessSets k_distinct_witnesses(const WitnessProblem& p, u64 k,
                                 const std::vector<u32>& restriction,
                                 const std::vector<u32>* only_outputs = nullptr);

/// Greedy hitting set: repeatedly pick the element covering the most unhit
/// sets (ties to the smallest index). Every input set must have size >= r_min;
/// the result size is checked against min(cap, ceil((n/r_min)*ln(max(2,#sets)))).
std::vector<u32> greedy_hitting_set(const std::vector<std::vector<u32>>& sets,
                                    u64 universe_n, u64 r_min, u64 cap);

struct MinWitnessResult {
  std::vector<u32> sigma;  // permutation of the padded universe; sigma[r] = element at rank r
  std::vector<std::vector<u32>> witnesses;           // per problem, aligned with outputs
  std::vector<std::vector<u64>> activation_counts;   // instrumentation: prefix count at first activation
};

/// Minimum witness under one uniformly random order, shared by all problems.
/// For prefix lengths l = 1,2,4,...,n the support of `a` restricted to the
/// first l ranks is folded into exact per-output counts; an output is handled
/// at the first l where its count turns positive: count 1 resolves directly,
/// otherwise witnesses are sampled until all of them (count many) are
/// collected and the rank-minimum is taken.
MinWitnessResult min_witness_random_order(
    const std::vector<WitnessProblem>& problems, std::mt19937_64& rng);

/// Same machinery with the order drawn once up front so that problems can be
/// built and resolved one at a time (keeps one problem's state in memory).
class MinWitnessSession {
 public:
  MinWitnessSession(size_t universe_len, std::mt19937_64& rng);

  const std::vector<u32>& sigma() const { return sigma_; }
  u32 rank_of(u32 element) const { return rank_[element]; }

  std::vector<u32> resolve(const WitnessProblem& p,
                           std::vector<u64>* activation_counts = nullptr);

 private:
  std::vector<u32> sigma_;
  std::vector<u32> rank_;
  std::mt19937_64* rng_;
};

struct AdaptiveResult {
  std::vector<u32> sigma;                   // permutation of the padded universe
  std::vector<std::vector<u32>> witnesses;  // per problem, aligned with outputs
};

/// Deterministic order + minimum witnesses, built together: prefixes halve
/// from the whole universe; at each level k = 2*ceil(log2(#unresolved)) + 5
/// distinct witnesses are sought inside the current prefix, a greedy hitting
/// set of the full witness lists becomes the next prefix, and outputs whose
/// complete witness list fell outside it are resolved.
AdaptiveResult adaptive_min_witness(const std::vector<WitnessProblem>& problems);

}  // namespace witness
}  // namespace atk

#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "atk/types.hpp"

namespace atk {

/// Exact integer convolution: c[i] = sum_{j+k=i} a[j]*b[k].
/// Contract: every output coefficient is below 2^62 (checked); inputs whose
/// coarse bound max(a)*max(b)*min(|a|,|b|) exceeds the reconstruction range
/// are rejected up front.
std::vector<u64> int_convolve(const std::vector<u64>& a,
                              const std::vector<u64>& b);

struct BoolConvolution {
  BitVec feasible;          // c[i] = OR_{j+k=i} (a[j] AND b[k])
  std::vector<u64> counts;  // exact number of witnesses per output index
};

/// Boolean convolution of 0/1 arrays together with exact witness counts.
BoolConvolution bool_convolve(const BitVec& a, const BitVec& b);

/// Repeated convolutions against one fixed 0/1 operand reuse its transform.
class CachedBoolConvolver {
 public:
  /// fixed: the operand reused across calls; max_other_len: upper bound on the
  /// length of the varying operand.
  CachedBoolConvolver(const BitVec& fixed, size_t max_other_len);
  ~CachedBoolConvolver();
  CachedBoolConvolver(CachedBoolConvolver&&) noexcept;
  CachedBoolConvolver& operator=(CachedBoolConvolver&&) noexcept;

  /// counts[i] = #{x : fixed[x] = other[i-x] = 1}, exact.
  std::vector<u64> counts_against(const BitVec& other) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Array of values for (max,+)/(min,+) convolutions; kNegInf is the absorbing
/// "no value" element.
using ValArray = std::vector<i128>;

/// Backend interface for (max,+) convolution. The default is the quadratic
/// schoolbook loop; faster algorithms can be plugged in behind it.
class MaxPlusBackend {
 public:
  virtual ~MaxPlusBackend() = default;
  virtual ValArray convolve(const ValArray& a, const ValArray& b) const = 0;
};

class SchoolbookMaxPlus final : public MaxPlusBackend {
 public:
  ValArray convolve(const ValArray& a, const ValArray& b) const override;
};

/// c[i] = max_{j+k=i} (a[j] + b[k]), kNegInf absorbing.
ValArray maxplus_convolve(const ValArray& a, const ValArray& b,
                          const MaxPlusBackend* backend = nullptr);

/// (min,+) by negation: min_{j+k=i} (a[j] + b[k]) with kNegInf meaning +inf
/// on inputs mapped through negation. Values use the same sentinel.
ValArray minplus_convolve(const ValArray& a, const ValArray& b,
                          const MaxPlusBackend* backend = nullptr);

}  // namespace atk

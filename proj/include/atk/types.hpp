#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace atk {

using u8 = std::uint8_t;
using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i32 = std::int32_t;
using i64 = std::int64_t;
using i128 = __int128;
using u128 = unsigned __int128;

// Values are carried with 128-bit headroom: profits go up to 2^40, targets up
// to 2^40, and kernel computation rescales values by (n+1) with n up to 2^20,
// so intermediate encodings need ~101 bits.
inline constexpr i128 kNegInf = -(i128(1) << 126);

inline bool is_neg_inf(i128 v) { return v <= kNegInf / 2; }

// Feasibility masks; one byte per position keeps random access cheap.
using BitVec = std::vector<u8>;

/// Thrown when an internal contract is violated (inconsistent witness counts,
/// encoding overflow, a bound that the algorithms guarantee failing to hold).
class contract_error : public std::logic_error {
 public:
  explicit contract_error(const std::string& what) : std::logic_error(what) {}
};

#define ATK_CHECK(cond, msg)                        \
  do {                                              \
    if (!(cond)) throw ::atk::contract_error(msg);  \
  } while (0)

std::string to_string_i128(i128 v);
i128 parse_i128(const std::string& s);

}  // namespace atk

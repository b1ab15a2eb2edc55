#include "atk/convolution.hpp"

#include <algorithm>
#include <bit>
#include <utility>

namespace atk {
namespace {

// Montgomery arithmetic, templated over the word type. Values live in
// Montgomery form inside the transforms.
template <typename W, typename D>
struct Montgomery {
  W mod;
  W ninv;  // -mod^{-1} mod 2^bits
  W r1;    // 2^bits mod mod       (Montgomery one)
  W r2;    // 2^(2*bits) mod mod

  explicit Montgomery(W m) : mod(m) {
    // Newton iteration; converges to ninv with ninv * mod == -1 (mod 2^bits).
    ninv = 1;
    for (int i = 0; i < 7; ++i) ninv *= W(2) + ninv * mod;
    r1 = W((D(1) << (sizeof(W) * 8)) % mod);
    r2 = W(D(r1) * r1 % mod);
  }

  W reduce(D t) const {
    W m = W(t) * ninv;
    W res = W((t + D(m) * mod) >> (sizeof(W) * 8));
    return res >= mod ? res - mod : res;
  }
  W mul(W a, W b) const { return reduce(D(a) * b); }
  W add(W a, W b) const {
    W r = a + b;
    return r >= mod ? r - mod : r;
  }
  W sub(W a, W b) const { return a >= b ? a - b : a + mod - b; }
  W to_mont(W a) const { return mul(a, r2); }
  W from_mont(W a) const { return reduce(D(a)); }
  W pow(W base, u64 e) const {  // base in Montgomery form
    W res = r1;
    while (e) {
      if (e & 1) res = mul(res, base);
      base = mul(base, base);
      e >>= 1;
    }
    return res;
  }
  W inv(W a) const { return pow(a, mod - 2); }  // mod is prime
};

using M32 = Montgomery<u32, u64>;
using M64 = Montgomery<u64, u128>;

constexpr u32 kP32 = 998244353;              // 119*2^23 + 1, root 3
constexpr u64 kP64a = 4179340454199820289ULL;  // 29*2^57 + 1, root 3
constexpr u64 kP64b = 1945555039024054273ULL;  // 27*2^56 + 1, root 5

template <typename W, typename D>
void ntt_inplace(std::vector<W>& a, bool invert, const Montgomery<W, D>& m,
                 W generator) {
  const size_t n = a.size();
  for (size_t i = 1, j = 0; i < n; ++i) {
    size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  std::vector<W> pw(n / 2);
  for (size_t len = 2; len <= n; len <<= 1) {
    W wlen = m.pow(m.to_mont(generator), (m.mod - 1) / len);
    if (invert) wlen = m.inv(wlen);
    pw[0] = m.r1;
    for (size_t k = 1; k < len / 2; ++k) pw[k] = m.mul(pw[k - 1], wlen);
    for (size_t i = 0; i < n; i += len) {
      for (size_t k = 0; k < len / 2; ++k) {
        W u = a[i + k];
        W v = m.mul(a[i + k + len / 2], pw[k]);
        a[i + k] = m.add(u, v);
        a[i + k + len / 2] = m.sub(u, v);
      }
    }
  }
  if (invert) {
    W n_inv = m.inv(m.to_mont(W(n % m.mod)));
    for (W& x : a) x = m.mul(x, n_inv);
  }
}

template <typename W, typename D>
std::vector<W> ntt_convolve(const std::vector<u64>& a,
                            const std::vector<u64>& b, W prime, W generator) {
  Montgomery<W, D> m(prime);
  size_t out_len = a.size() + b.size() - 1;
  size_t n = std::bit_ceil(out_len);
  std::vector<W> fa(n, 0), fb(n, 0);
  for (size_t i = 0; i < a.size(); ++i) fa[i] = m.to_mont(W(a[i] % prime));
  for (size_t i = 0; i < b.size(); ++i) fb[i] = m.to_mont(W(b[i] % prime));
  ntt_inplace(fa, false, m, generator);
  ntt_inplace(fb, false, m, generator);
  for (size_t i = 0; i < n; ++i) fa[i] = m.mul(fa[i], fb[i]);
  ntt_inplace(fa, true, m, generator);
  fa.resize(out_len);
  for (W& x : fa) x = m.from_mont(x);
  return fa;
}

u64 crt2(u64 r1, u64 r2) {
  // x = r1 (mod P64a), x = r2 (mod P64b); exact for x < P64a*P64b.
  static const M64 mb(kP64b);
  static const u64 inv_a_mod_b =
      mb.from_mont(mb.inv(mb.to_mont(kP64a % kP64b)));
  u64 diff = r2 >= r1 % kP64b ? r2 - r1 % kP64b : r2 + kP64b - r1 % kP64b;
  u64 k = u64(u128(diff) * inv_a_mod_b % kP64b);
  u128 x = u128(r1) + u128(k) * kP64a;
  ATK_CHECK(x < u128(1) << 62, "int_convolve: coefficient exceeds 2^62 bound");
  return u64(x);
}

constexpr u128 kCoeffLimit = u128(1) << 62;

u128 coarse_bound(const std::vector<u64>& a, const std::vector<u64>& b) {
  u64 ma = 0, mb = 0;
  for (u64 x : a) ma = std::max(ma, x);
  for (u64 x : b) mb = std::max(mb, x);
  return u128(ma) * mb * std::min(a.size(), b.size());
}

}  // namespace

std::vector<u64> int_convolve(const std::vector<u64>& a,
                              const std::vector<u64>& b) {
  if (a.empty() || b.empty()) return {};
  const u128 bound = coarse_bound(a, b);
  ATK_CHECK(bound < kCoeffLimit, "int_convolve: declared bounds exceed 2^62");
  size_t out_len = a.size() + b.size() - 1;
  if (u128(a.size()) * b.size() <= 4096) {  // schoolbook for tiny inputs
    std::vector<u64> c(out_len, 0);
    for (size_t i = 0; i < a.size(); ++i) {
      if (!a[i]) continue;
      for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    }
    for (u64 x : c) ATK_CHECK(x < kCoeffLimit, "int_convolve: overflow");
    return c;
  }
  if (bound < kP32) {
    ATK_CHECK(std::bit_ceil(out_len) <= (size_t(1) << 23),
              "int_convolve: transform too long for 32-bit prime");
    std::vector<u32> r = ntt_convolve<u32, u64>(a, b, kP32, 3);
    return std::vector<u64>(r.begin(), r.end());
  }
  ATK_CHECK(std::bit_ceil(out_len) <= (size_t(1) << 56),
            "int_convolve: transform too long");
  std::vector<u64> ra = ntt_convolve<u64, u128>(a, b, kP64a, 3);
  std::vector<u64> rb = ntt_convolve<u64, u128>(a, b, kP64b, 5);
  std::vector<u64> c(out_len);
  for (size_t i = 0; i < out_len; ++i) c[i] = crt2(ra[i], rb[i]);
  return c;
}

BoolConvolution bool_convolve(const BitVec& a, const BitVec& b) {
  BoolConvolution out;
  if (a.empty() || b.empty()) return out;
  std::vector<u64> ia(a.begin(), a.end()), ib(b.begin(), b.end());
  out.counts = int_convolve(ia, ib);
  out.feasible.resize(out.counts.size());
  for (size_t i = 0; i < out.counts.size(); ++i)
    out.feasible[i] = out.counts[i] > 0;
  return out;
}

struct CachedBoolConvolver::Impl {
  M32 m32{kP32};
  M64 m64{kP64a};
  bool wide = false;  // transform longer than the 32-bit prime allows
  size_t fixed_len;
  size_t max_other;
  size_t padded;
  std::vector<u32> fhat32;  // NTT of the fixed operand, Montgomery form
  std::vector<u64> fhat64;
};

CachedBoolConvolver::CachedBoolConvolver(const BitVec& fixed,
                                         size_t max_other_len)
    : impl_(new Impl) {
  ATK_CHECK(!fixed.empty() && max_other_len > 0, "empty convolver operand");
  u64 ones = 0;
  for (u8 v : fixed) ones += v;
  ATK_CHECK(ones < kP32, "cached convolver: count bound exceeds prime");
  impl_->fixed_len = fixed.size();
  impl_->max_other = max_other_len;
  impl_->padded = std::bit_ceil(fixed.size() + max_other_len - 1);
  impl_->wide = impl_->padded > (size_t(1) << 23);
  ATK_CHECK(impl_->padded <= (size_t(1) << 56),
            "cached convolver: transform too long");
  if (impl_->wide) {
    impl_->fhat64.assign(impl_->padded, 0);
    for (size_t i = 0; i < fixed.size(); ++i)
      if (fixed[i]) impl_->fhat64[i] = impl_->m64.r1;
    ntt_inplace(impl_->fhat64, false, impl_->m64, u64(3));
  } else {
    impl_->fhat32.assign(impl_->padded, 0);
    for (size_t i = 0; i < fixed.size(); ++i)
      if (fixed[i]) impl_->fhat32[i] = impl_->m32.r1;
    ntt_inplace(impl_->fhat32, false, impl_->m32, u32(3));
  }
}

CachedBoolConvolver::~CachedBoolConvolver() = default;
CachedBoolConvolver::CachedBoolConvolver(CachedBoolConvolver&&) noexcept = default;
CachedBoolConvolver& CachedBoolConvolver::operator=(CachedBoolConvolver&&) noexcept = default;

std::vector<u64> CachedBoolConvolver::counts_against(const BitVec& other) const {
  const Impl& im = *impl_;
  ATK_CHECK(other.size() <= im.max_other, "operand longer than declared");
  const size_t out_len = im.fixed_len + other.size() - 1;
  std::vector<u64> counts(out_len);
  if (im.wide) {
    std::vector<u64> g(im.padded, 0);
    for (size_t i = 0; i < other.size(); ++i)
      if (other[i]) g[i] = im.m64.r1;
    ntt_inplace(g, false, im.m64, u64(3));
    for (size_t i = 0; i < im.padded; ++i) g[i] = im.m64.mul(g[i], im.fhat64[i]);
    ntt_inplace(g, true, im.m64, u64(3));
    for (size_t i = 0; i < out_len; ++i) counts[i] = im.m64.from_mont(g[i]);
  } else {
    std::vector<u32> g(im.padded, 0);
    for (size_t i = 0; i < other.size(); ++i)
      if (other[i]) g[i] = im.m32.r1;
    ntt_inplace(g, false, im.m32, u32(3));
    for (size_t i = 0; i < im.padded; ++i) g[i] = im.m32.mul(g[i], im.fhat32[i]);
    ntt_inplace(g, true, im.m32, u32(3));
    for (size_t i = 0; i < out_len; ++i) counts[i] = im.m32.from_mont(g[i]);
  }
  return counts;
}

ValArray SchoolbookMaxPlus::convolve(const ValArray& a, const ValArray& b) const {
  if (a.empty() || b.empty()) return {};
  ValArray c(a.size() + b.size() - 1, kNegInf);
  for (size_t i = 0; i < a.size(); ++i) {
    if (is_neg_inf(a[i])) continue;
    for (size_t j = 0; j < b.size(); ++j) {
      if (is_neg_inf(b[j])) continue;
      i128 v = a[i] + b[j];
      if (v > c[i + j]) c[i + j] = v;
    }
  }
  return c;
}

ValArray maxplus_convolve(const ValArray& a, const ValArray& b,
                          const MaxPlusBackend* backend) {
  static const SchoolbookMaxPlus schoolbook;
  return (backend ? *backend : static_cast<const MaxPlusBackend&>(schoolbook))
      .convolve(a, b);
}

ValArray minplus_convolve(const ValArray& a, const ValArray& b,
                          const MaxPlusBackend* backend) {
  auto neg = [](const ValArray& v) {
    ValArray out(v.size());
    for (size_t i = 0; i < v.size(); ++i)
      out[i] = is_neg_inf(v[i]) ? kNegInf : -v[i];
    return out;
  };
  return neg(maxplus_convolve(neg(a), neg(b), backend));
}

}  // namespace atk

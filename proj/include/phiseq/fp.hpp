#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "phiseq/errors.hpp"

namespace phiseq {

using u32 = std::uint32_t;
using u64 = std::uint64_t;

/// Canonical residue mod p, always kept in [0, p).
using fp_t = u32;

/// Exclusive upper bound on supported primes. With p < 2^31 every product of
/// two residues stays below 2^62, so plain 64-bit arithmetic is exact.
inline constexpr u64 kPrimeCap = u64{1} << 31;

namespace detail {

inline u64 mulmod_u64(u64 a, u64 b, u64 m) { return a * b % m; }

inline u64 powmod_u64(u64 base, u64 exp, u64 m) {
  u64 r = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) r = mulmod_u64(r, base, m);
    base = mulmod_u64(base, base, m);
    exp >>= 1;
  }
  return r;
}

}  // namespace detail

/// Deterministic Miller-Rabin. The witness set {2, 7, 61} is exact for all
/// n < 4'759'123'141, which covers the full supported range.
inline bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 q : {2u, 3u, 5u, 7u, 11u, 13u}) {
    if (n == q) return true;
    if (n % q == 0) return false;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) { d >>= 1; ++s; }
  for (u64 a : {2u, 7u, 61u}) {
    const u64 w = a % n;
    if (w == 0) continue;
    u64 x = detail::powmod_u64(w, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = detail::mulmod_u64(x, x, n);
      if (x == n - 1) { composite = false; break; }
    }
    if (composite) return false;
  }
  return true;
}

/// All primes p with lo <= p <= hi, ascending. Uses a sieve for hi <= 10^7
/// and per-candidate Miller-Rabin above that.
inline std::vector<u32> primes_in_range(u64 lo, u64 hi) {
  if (lo > hi) throw Error("primes_in_range: lo > hi");
  if (hi >= kPrimeCap) throw InvalidPrime("primes_in_range: bound must be below 2^31");
  std::vector<u32> out;
  if (hi < 2) return out;
  if (lo < 2) lo = 2;
  if (hi <= 10'000'000) {
    std::vector<char> composite(hi + 1, 0);
    for (u64 i = 2; i * i <= hi; ++i)
      if (!composite[i])
        for (u64 j = i * i; j <= hi; j += i) composite[j] = 1;
    for (u64 n = lo; n <= hi; ++n)
      if (!composite[n]) out.push_back(static_cast<u32>(n));
  } else {
    if (lo <= 2 && 2 <= hi) out.push_back(2);
    u64 n = lo | 1;  // first odd >= lo
    if (n < 3) n = 3;
    for (; n <= hi; n += 2)
      if (is_prime(n)) out.push_back(static_cast<u32>(n));
  }
  return out;
}

/// One prime-power factor of p-1.
struct PrimePower {
  u32 prime;
  u32 exponent;
  bool operator==(const PrimePower&) const = default;
};

/// A validated prime p together with the factorization of p-1. Immutable
/// after construction and safe to share across threads. All arithmetic on
/// canonical residues lives here.
class PrimeContext {
 public:
  explicit PrimeContext(u32 p) : p_(p) {
    if (p < 5 || u64{p} >= kPrimeCap || !is_prime(p))
      throw InvalidPrime("PrimeContext: need a prime p with 5 <= p < 2^31, got " +
                         std::to_string(p));
    u32 m = p - 1;
    for (u32 q = 2; u64{q} * q <= m; q = (q == 2 ? 3 : q + 2)) {
      if (m % q) continue;
      u32 e = 0;
      while (m % q == 0) { m /= q; ++e; }
      factors_.push_back({q, e});
    }
    if (m > 1) factors_.push_back({m, 1});
  }

  u32 p() const { return p_; }
  const std::vector<PrimePower>& factors_p_minus_1() const { return factors_; }

  fp_t reduce(u64 x) const { return static_cast<fp_t>(x % p_); }
  fp_t add(fp_t a, fp_t b) const {
    u32 s = a + b;  // fits: both < p < 2^31
    return s >= p_ ? s - p_ : s;
  }
  fp_t sub(fp_t a, fp_t b) const { return a >= b ? a - b : a + p_ - b; }
  fp_t neg(fp_t a) const { return a == 0 ? 0 : p_ - a; }
  fp_t mul(fp_t a, fp_t b) const { return static_cast<fp_t>(u64{a} * b % p_); }

  /// base^exp by square-and-multiply; exp = 0 gives 1.
  fp_t pow(fp_t base, u64 exp) const {
    return static_cast<fp_t>(detail::powmod_u64(base, exp, p_));
  }

  fp_t inv(fp_t a) const {
    if (a == 0) throw ZeroInverse("inv: 0 has no inverse mod " + std::to_string(p_));
    return pow(a, p_ - 2);
  }

  /// Least m >= 1 with a^m = 1, found by stripping prime factors from p-1.
  u32 order(fp_t a) const {
    if (a == 0) throw ZeroOrderInput("order: undefined for 0");
    u32 m = p_ - 1;
    for (const auto& [q, e] : factors_) {
      for (u32 i = 0; i < e; ++i) {
        if (pow(a, m / q) != 1) break;
        m /= q;
      }
    }
    return m;
  }

  bool is_primitive_root(fp_t b) const { return b != 0 && order(b) == p_ - 1; }

  /// Closed form of sum_{n=0}^{p-2} x^n: p-1 when x = 1, else 0.
  fp_t geometric_sum(fp_t x) const {
    if (x == 0) throw ZeroBase("geometric_sum: base must be nonzero");
    return x == 1 ? p_ - 1 : 0;
  }

  /// Square root mod p via Tonelli-Shanks; nullopt for non-residues.
  /// The non-residue search is a deterministic ascending scan.
  std::optional<fp_t> sqrt(fp_t a) const {
    if (a == 0) return fp_t{0};
    if (pow(a, (p_ - 1) / 2) != 1) return std::nullopt;
    if (p_ % 4 == 3) return pow(a, (p_ + 1) / 4);
    u32 q = p_ - 1;
    u32 s = 0;
    while ((q & 1) == 0) { q >>= 1; ++s; }
    fp_t z = 2;
    while (pow(z, (p_ - 1) / 2) == 1) ++z;
    fp_t c = pow(z, q);
    fp_t x = pow(a, (q + 1) / 2);
    fp_t t = pow(a, q);
    u32 m = s;
    while (t != 1) {
      u32 i = 0;
      fp_t tt = t;
      while (tt != 1) { tt = mul(tt, tt); ++i; }
      fp_t b = c;
      for (u32 j = 0; j + i + 1 < m; ++j) b = mul(b, b);
      x = mul(x, b);
      c = mul(b, b);
      t = mul(t, c);
      m = i;
    }
    return x;
  }

  bool operator==(const PrimeContext& o) const { return p_ == o.p_; }

 private:
  u32 p_;
  std::vector<PrimePower> factors_;
};

}  // namespace phiseq

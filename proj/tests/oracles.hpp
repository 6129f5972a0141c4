// Independent reference implementations used only by tests. These stay
// deliberately naive (loops, trial division, explicit powering) so they share
// no code path with the library routines they cross-check.
#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

namespace oracles {

using u32 = std::uint32_t;
using u64 = std::uint64_t;

inline u64 powmod(u64 b, u64 e, u64 m) {
  u64 r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return r;
}

/// Extended-gcd modular inverse.
inline u32 egcd_inverse(u32 a, u32 p) {
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = p, new_r = a;
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::int64_t tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (t < 0) t += p;
  return static_cast<u32>(t);
}

/// Order by walking successive powers.
inline u32 brute_order(u32 a, u32 p) {
  u64 t = a % p;
  u32 m = 1;
  while (t != 1) {
    t = t * a % p;
    ++m;
  }
  return m;
}

inline bool trial_division_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::vector<u32> sieve_primes(u32 lo, u32 hi) {
  std::vector<char> composite(hi + 1, 0);
  std::vector<u32> out;
  for (u64 i = 2; i <= hi; ++i) {
    if (composite[i]) continue;
    if (i >= lo) out.push_back(static_cast<u32>(i));
    for (u64 j = i * i; j <= hi; j += i) composite[j] = 1;
  }
  return out;
}

inline u32 loop_geometric_sum(u32 x, u32 p) {
  u64 sum = 0, t = 1;
  for (u32 n = 0; n <= p - 2; ++n) {
    sum += t;
    t = t * x % p;
  }
  return static_cast<u32>(sum % p);
}

/// All roots of x^3 - x - 1 by direct evaluation.
inline std::vector<u32> scan_cubic_roots(u32 p) {
  std::vector<u32> roots;
  for (u64 x = 0; x < p; ++x) {
    u64 v = ((x * x % p) * x % p + 2 * u64{p} - x - 1) % p;
    if (v == 0) roots.push_back(static_cast<u32>(x));
  }
  return roots;
}

/// Recurrence window a_0..a_{count-1} computed with plain index arithmetic.
inline std::vector<u32> recurrence_terms(u32 p, u32 kappa, const std::vector<u32>& init,
                                         u32 count) {
  std::vector<u32> a(init);
  a.resize(count);
  for (u32 n = kappa; n < count; ++n) a[n] = (a[n - kappa] + a[n - kappa + 1]) % p;
  return a;
}

/// { j in [0,k] : alpha^j beta^(k-j) = 1 } by explicit powering per j.
inline std::vector<u32> brute_index_set(u32 alpha, u32 beta, u32 k, u32 p) {
  std::vector<u32> out;
  for (u32 j = 0; j <= k; ++j)
    if (powmod(alpha, j, p) * powmod(beta, k - j, p) % p == 1) out.push_back(j);
  return out;
}

/// Decides I_k != {} for every k in [1, p-2] in O(p) total: alpha^j beta^(k-j)
/// = 1 for some j in [0,k] iff beta^(-k) lies in the cyclic group generated by
/// alpha/beta at an index <= k.
inline std::vector<char> nonempty_index_sets(u32 alpha, u32 beta, u32 p) {
  const u32 ratio = static_cast<u32>(powmod(beta, p - 2, p) * alpha % p);
  std::unordered_map<u32, u32> subgroup_index;  // value -> least exponent
  u64 t = 1;
  for (u32 j = 0;; ++j) {
    if (subgroup_index.count(static_cast<u32>(t))) break;
    subgroup_index[static_cast<u32>(t)] = j;
    t = t * ratio % p;
  }
  const u32 beta_inv = static_cast<u32>(powmod(beta, p - 2, p));
  std::vector<char> nonempty(p - 1, 0);  // index k, valid for 1 <= k <= p-2
  u64 bk = 1;
  for (u32 k = 1; k <= p - 2; ++k) {
    bk = bk * beta_inv % p;  // beta^(-k)
    auto it = subgroup_index.find(static_cast<u32>(bk));
    if (it != subgroup_index.end() && it->second <= k) nonempty[k] = 1;
  }
  return nonempty;
}

}  // namespace oracles

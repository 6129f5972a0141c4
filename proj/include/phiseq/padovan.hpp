#pragma once

#include <array>
#include <numeric>
#include <vector>

#include "phiseq/sequence.hpp"

namespace phiseq {

/// Coefficients (A, B, C) such that a_n = A r0^n + B r1^n + C r2^n matches
/// the initial values (1, b, c), with (r0, r1, r2) the sorted cubic roots:
/// the coefficient at root r is (r^2 b + r c + 1) / (2r + 3).
inline std::array<fp_t, 3> closed_form_coefficients(const PrimeContext& ctx,
                                                    const CubicProfile& profile,
                                                    fp_t b, fp_t c) {
  if (profile.rho != 3)
    throw WrongRootCount("closed_form_coefficients: needs three distinct cubic roots");
  std::array<fp_t, 3> out{};
  for (std::size_t i = 0; i < 3; ++i) {
    const fp_t r = profile.roots[i].value;
    const fp_t num = ctx.add(ctx.add(ctx.mul(ctx.mul(r, r), b), ctx.mul(r, c)), 1);
    const fp_t den = ctx.add(ctx.mul(2, r), 3 % ctx.p());
    out[i] = ctx.mul(num, ctx.inv(den));
  }
  return out;
}

/// sum_{n=0}^{p-2} a_n^k; zero for every complete sequence.
inline fp_t power_sum(const PhiSequence& seq, u32 k) {
  const auto& ctx = seq.context();
  if (k < 1 || k > ctx.p() - 2)
    throw BadExponent("power_sum: k must lie in [1, p-2]");
  fp_t s = 0;
  for (fp_t a : seq.terms()) s = ctx.add(s, ctx.pow(a, k));
  return s;
}

/// Multiplicative orders of the root ratios. Orders come in equal pairs
/// (|x| = |1/x|), so three distinct values cover all six ordered pairs;
/// min_order is the least of them.
struct RatioOrders {
  struct Entry {
    fp_t num, den;
    u32 order;
  };
  std::vector<Entry> entries;  // all six ordered pairs
  u32 min_order;
};

inline RatioOrders ratio_orders(const PrimeContext& ctx, const CubicProfile& profile) {
  if (profile.rho != 3)
    throw WrongRootCount("ratio_orders: needs three distinct cubic roots");
  RatioOrders out;
  out.min_order = ctx.p();
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      if (i == j) continue;
      const fp_t a = profile.roots[i].value;
      const fp_t b = profile.roots[j].value;
      const u32 n = ctx.order(ctx.mul(a, ctx.inv(b)));
      out.entries.push_back({a, b, n});
      out.min_order = std::min(out.min_order, n);
    }
  return out;
}

/// The exponent sets of a root pair at level k:
///   fwd = { j in [0, k] : alpha^j beta^(k-j) = 1 }
///   rev = { j in [0, k] : alpha^(k-j) beta^j = 1 }
/// Both are scanned incrementally (one multiplication per step). They mirror
/// each other: j lies in fwd exactly when k-j lies in rev.
struct IndexSetPair {
  std::vector<u32> fwd, rev;
};

inline IndexSetPair index_sets(const PrimeContext& ctx, fp_t alpha, fp_t beta, u32 k) {
  if (alpha == 0 || beta == 0 || alpha == beta)
    throw Error("index_sets: roots must be distinct and nonzero");
  if (k < 1 || k > ctx.p() - 2) throw BadExponent("index_sets: k must lie in [1, p-2]");
  IndexSetPair out;
  const fp_t fwd_step = ctx.mul(alpha, ctx.inv(beta));
  const fp_t rev_step = ctx.mul(beta, ctx.inv(alpha));
  fp_t f = ctx.pow(beta, k);
  fp_t r = ctx.pow(alpha, k);
  for (u32 j = 0; j <= k; ++j) {
    if (f == 1) out.fwd.push_back(j);
    if (r == 1) out.rev.push_back(j);
    f = ctx.mul(f, fwd_step);
    r = ctx.mul(r, rev_step);
  }
  return out;
}

/// Everything the singleton argument needs about one ordered root pair.
/// k_min is the least k with a nonempty fwd set; j0 and j0_prime are the
/// minima of the two sets at k_min, and ell satisfies
/// k_min = j0 + j0_prime + ell * N with N the order of alpha/beta.
struct OrderProfile {
  u32 p = 0;
  fp_t alpha = 0, beta = 0;
  bool alpha_primitive = false, beta_primitive = false;
  u32 ratio_order = 0;  // N
  u32 k_min = 0;
  u32 j0 = 0, j0_prime = 0;
  u32 ell = 0;
  bool singleton = false;
  bool strong_ok = false;  // p <= N^2 + 1
  bool weak_ok = false;    // p <  N^2 + j0*N + 1

  u32 k_floor() const { return (p - 1) / ratio_order; }
  bool at_k_floor() const { return k_min == k_floor(); }
  /// Fails the weak bound with k_min at its floor: outside both proofs.
  bool exceptional() const { return !weak_ok && at_k_floor(); }
  /// Fails the strong bound with k_min at its floor.
  bool beyond_strong() const { return !strong_ok && at_k_floor(); }

  /// The same pair read in the opposite orientation: alpha/beta swap and the
  /// two index-set minima swap; everything else is orientation-free.
  OrderProfile flipped() const {
    OrderProfile f = *this;
    std::swap(f.alpha, f.beta);
    std::swap(f.alpha_primitive, f.beta_primitive);
    std::swap(f.j0, f.j0_prime);
    // weak_ok depends on j0; recompute.
    f.weak_ok = u64{f.p} < u64{f.ratio_order} * f.ratio_order +
                               u64{f.j0} * f.ratio_order + 1;
    return f;
  }
};

struct ConditionFlags {
  bool strong_ok, weak_ok, exceptional;
};

inline ConditionFlags condition_checks(const OrderProfile& profile) {
  return {profile.strong_ok, profile.weak_ok, profile.exceptional()};
}

/// Builds the OrderProfile of an ordered pair of distinct cubic roots.
/// Any j in a nonempty set forces (alpha^N)^k = (beta^N)^k = 1, so only
/// common multiples of those two orders can carry one; the k scan walks
/// them. For a pair carrying a complete sequence both orders equal
/// (p-1)/N, which recovers the usual stride. Reaching p-2 without a hit is
/// impossible for distinct nonzero roots and raises NoNonemptyIndexSet.
inline OrderProfile order_profile(const PrimeContext& ctx, fp_t alpha, fp_t beta) {
  if (alpha == 0 || beta == 0 || alpha == beta)
    throw Error("order_profile: roots must be distinct and nonzero");
  const u32 p = ctx.p();
  OrderProfile out;
  out.p = p;
  out.alpha = alpha;
  out.beta = beta;
  out.alpha_primitive = ctx.is_primitive_root(alpha);
  out.beta_primitive = ctx.is_primitive_root(beta);
  const fp_t step = ctx.mul(alpha, ctx.inv(beta));
  out.ratio_order = ctx.order(step);
  const u32 base = static_cast<u32>(std::lcm(
      u64{ctx.order(ctx.pow(alpha, out.ratio_order))},
      u64{ctx.order(ctx.pow(beta, out.ratio_order))}));

  const fp_t beta_base = ctx.pow(beta, base);
  fp_t beta_k = 1;
  u32 k_min = 0;
  for (u32 k = base; k <= p - 2; k += base) {
    beta_k = ctx.mul(beta_k, beta_base);
    fp_t t = beta_k;  // alpha^0 beta^k, then multiply by alpha/beta
    for (u32 j = 0; j <= k; ++j) {
      if (t == 1) { k_min = k; break; }
      t = ctx.mul(t, step);
    }
    if (k_min) break;
  }
  if (!k_min)
    throw NoNonemptyIndexSet("order_profile: no nonempty index set up to p-2 for p = " +
                             std::to_string(p));

  out.k_min = k_min;
  const IndexSetPair sets = index_sets(ctx, alpha, beta, k_min);
  out.j0 = sets.fwd.front();
  out.j0_prime = sets.rev.front();
  out.singleton = sets.fwd.size() == 1;
  const u32 jsum = out.j0 + out.j0_prime;
  if (k_min < jsum || (k_min - jsum) % out.ratio_order != 0)
    throw Error("order_profile: k_min - j0 - j0' is not a nonnegative multiple of N");
  out.ell = (k_min - jsum) / out.ratio_order;
  out.strong_ok = u64{p} <= u64{out.ratio_order} * out.ratio_order + 1;
  out.weak_ok = u64{p} < u64{out.ratio_order} * out.ratio_order +
                             u64{out.j0} * out.ratio_order + 1;
  return out;
}

/// Fixed analysis of the one prime (p = 23) where the cubic has a double
/// root. Reconstructs the forced linear relation c = slope*b + intercept
/// from a_{p-1} = 1, the cube power-sum as a polynomial in b, its solution
/// set, and which solutions actually yield complete sequences.
struct DoubleRootCaseReport {
  u32 p = 23;
  fp_t c_slope = 0;
  fp_t c_intercept = 0;
  FpPoly cube_sum_in_b;            // sum a_n^3 after substituting the relation
  std::vector<fp_t> candidate_b;   // its roots, ascending
  std::vector<fp_t> complete_b;    // candidates whose sequence is complete
  std::vector<fp_t> primitive_b;   // candidates that are primitive roots
};

inline DoubleRootCaseReport analyze_double_root_case() {
  const PrimeContext ctx(23);
  const u32 p = 23;
  DoubleRootCaseReport out;

  // Track a_n = u_n + v_n*b + w_n*c symbolically through the recurrence.
  struct Lin { fp_t u, v, w; };
  std::vector<Lin> sym(p);
  sym[0] = {1, 0, 0};
  sym[1] = {0, 1, 0};
  sym[2] = {0, 0, 1};
  for (u32 n = 3; n < p; ++n)
    sym[n] = {ctx.add(sym[n - 3].u, sym[n - 2].u), ctx.add(sym[n - 3].v, sym[n - 2].v),
              ctx.add(sym[n - 3].w, sym[n - 2].w)};

  // Periodicity forces a_{p-1} = 1; solve for c in terms of b.
  const Lin& last = sym[p - 1];
  const fp_t winv = ctx.inv(last.w);
  out.c_slope = ctx.neg(ctx.mul(last.v, winv));
  out.c_intercept = ctx.mul(ctx.sub(1, last.u), winv);

  // Substitute: a_n = x_n + y_n*b, then the cube sum is a cubic in b.
  std::array<fp_t, 4> coef{};  // coef[i] multiplies b^i
  for (u32 n = 0; n <= p - 2; ++n) {
    const fp_t x = ctx.add(sym[n].u, ctx.mul(sym[n].w, out.c_intercept));
    const fp_t y = ctx.add(sym[n].v, ctx.mul(sym[n].w, out.c_slope));
    const fp_t x2 = ctx.mul(x, x), y2 = ctx.mul(y, y);
    coef[0] = ctx.add(coef[0], ctx.mul(x2, x));
    coef[1] = ctx.add(coef[1], ctx.mul(3, ctx.mul(x2, y)));
    coef[2] = ctx.add(coef[2], ctx.mul(3, ctx.mul(x, y2)));
    coef[3] = ctx.add(coef[3], ctx.mul(y2, y));
  }
  out.cube_sum_in_b = FpPoly({coef[0], coef[1], coef[2], coef[3]});

  for (fp_t b = 0; b < p; ++b)
    if (poly_eval(ctx, out.cube_sum_in_b, b) == 0) out.candidate_b.push_back(b);

  for (fp_t b : out.candidate_b) {
    const fp_t c = ctx.add(ctx.mul(out.c_slope, b), out.c_intercept);
    const fp_t init[3] = {1, b, c};
    if (generate(ctx, 3, init).complete()) out.complete_b.push_back(b);
    if (ctx.is_primitive_root(b)) out.primitive_b.push_back(b);
  }
  return out;
}

}  // namespace phiseq

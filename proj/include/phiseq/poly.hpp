#pragma once

#include <algorithm>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "phiseq/fp.hpp"

namespace phiseq {

/// Dense polynomial over F_p. coeffs[i] multiplies X^i; a normalized
/// polynomial has no trailing zero coefficients, and the zero polynomial
/// has an empty coefficient vector.
struct FpPoly {
  std::vector<fp_t> coeffs;

  FpPoly() = default;
  explicit FpPoly(std::vector<fp_t> c) : coeffs(std::move(c)) { normalize(); }

  static FpPoly zero() { return FpPoly{}; }
  static FpPoly constant(fp_t c) { return FpPoly(std::vector<fp_t>{c}); }
  static FpPoly x() { return FpPoly({0, 1}); }

  bool is_zero() const { return coeffs.empty(); }
  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  fp_t coeff(std::size_t i) const { return i < coeffs.size() ? coeffs[i] : 0; }
  fp_t lead() const { return coeffs.empty() ? 0 : coeffs.back(); }

  void normalize() {
    while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
  }

  bool operator==(const FpPoly&) const = default;
};

inline FpPoly poly_add(const PrimeContext& ctx, const FpPoly& a, const FpPoly& b) {
  std::vector<fp_t> c(std::max(a.coeffs.size(), b.coeffs.size()), 0);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = ctx.add(a.coeff(i), b.coeff(i));
  return FpPoly(std::move(c));
}

inline FpPoly poly_sub(const PrimeContext& ctx, const FpPoly& a, const FpPoly& b) {
  std::vector<fp_t> c(std::max(a.coeffs.size(), b.coeffs.size()), 0);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = ctx.sub(a.coeff(i), b.coeff(i));
  return FpPoly(std::move(c));
}

inline FpPoly poly_scale(const PrimeContext& ctx, const FpPoly& a, fp_t s) {
  std::vector<fp_t> c(a.coeffs.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = ctx.mul(a.coeffs[i], s);
  return FpPoly(std::move(c));
}

/// Schoolbook multiplication; degrees stay around p at this scale.
inline FpPoly poly_mul(const PrimeContext& ctx, const FpPoly& a, const FpPoly& b) {
  if (a.is_zero() || b.is_zero()) return FpPoly::zero();
  const u64 p = ctx.p();
  std::vector<u64> acc(a.coeffs.size() + b.coeffs.size() - 1, 0);
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
    if (a.coeffs[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs.size(); ++j) {
      acc[i + j] += u64{a.coeffs[i]} * b.coeffs[j] % p;
      if (acc[i + j] >= (u64{1} << 62)) acc[i + j] %= p;
    }
  }
  std::vector<fp_t> c(acc.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = static_cast<fp_t>(acc[i] % p);
  return FpPoly(std::move(c));
}

/// Quotient and remainder of a / b; b must be nonzero.
inline std::pair<FpPoly, FpPoly> poly_divmod(const PrimeContext& ctx,
                                             const FpPoly& a, const FpPoly& b) {
  if (b.is_zero()) throw Error("poly_divmod: division by zero polynomial");
  if (a.degree() < b.degree()) return {FpPoly::zero(), a};
  std::vector<fp_t> rem = a.coeffs;
  std::vector<fp_t> quot(a.degree() - b.degree() + 1, 0);
  const fp_t lead_inv = ctx.inv(b.lead());
  for (int d = a.degree(); d >= b.degree(); --d) {
    fp_t r = rem[d];
    if (r == 0) continue;
    fp_t q = ctx.mul(r, lead_inv);
    quot[d - b.degree()] = q;
    for (int i = 0; i <= b.degree(); ++i)
      rem[d - b.degree() + i] = ctx.sub(rem[d - b.degree() + i], ctx.mul(q, b.coeffs[i]));
  }
  return {FpPoly(std::move(quot)), FpPoly(std::move(rem))};
}

inline fp_t poly_eval(const PrimeContext& ctx, const FpPoly& a, fp_t x) {
  fp_t r = 0;
  for (std::size_t i = a.coeffs.size(); i-- > 0;) r = ctx.add(ctx.mul(r, x), a.coeffs[i]);
  return r;
}

/// Monic gcd.
inline FpPoly poly_gcd(const PrimeContext& ctx, FpPoly a, FpPoly b) {
  while (!b.is_zero()) {
    auto [q, r] = poly_divmod(ctx, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.is_zero() && a.lead() != 1) a = poly_scale(ctx, a, ctx.inv(a.lead()));
  return a;
}

inline FpPoly poly_mulmod(const PrimeContext& ctx, const FpPoly& a, const FpPoly& b,
                          const FpPoly& m) {
  return poly_divmod(ctx, poly_mul(ctx, a, b), m).second;
}

inline FpPoly poly_powmod(const PrimeContext& ctx, FpPoly base, u64 exp, const FpPoly& m) {
  FpPoly r = FpPoly::constant(1);
  base = poly_divmod(ctx, base, m).second;
  while (exp) {
    if (exp & 1) r = poly_mulmod(ctx, r, base, m);
    base = poly_mulmod(ctx, base, base, m);
    exp >>= 1;
  }
  return r;
}

inline std::string to_string(const FpPoly& a) {
  if (a.is_zero()) return "0";
  std::string s;
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
    if (a.coeffs[i] == 0) continue;
    if (!s.empty()) s += " + ";
    if (i == 0 || a.coeffs[i] != 1) s += std::to_string(a.coeffs[i]);
    if (i >= 1) s += (i == 1 ? "x" : "x^" + std::to_string(i));
  }
  return s;
}

/// Annihilator S(X) = 1 - s_{k-1} X - ... - s_1 X^{k-1} - s_0 X^k of an
/// order-k recurrence a_{n+k} = s_0 a_n + s_1 a_{n+1} + ... + s_{k-1} a_{n+k-1}.
inline FpPoly recurrence_annihilator(const PrimeContext& ctx, u32 kappa,
                                     std::span<const fp_t> s) {
  if (kappa < 2) throw BadKappa("recurrence_annihilator: kappa must be >= 2");
  if (s.size() != kappa) throw LengthMismatch("recurrence_annihilator: need kappa coefficients");
  std::vector<fp_t> c(kappa + 1, 0);
  c[0] = 1;
  for (u32 j = 1; j <= kappa; ++j) c[j] = ctx.neg(s[kappa - j]);
  return FpPoly(std::move(c));
}

/// Annihilator of the a_{n+k} = a_n + a_{n+1} recurrence: 1 - X^{k-1} - X^k.
inline FpPoly phi_annihilator(const PrimeContext& ctx, u32 kappa) {
  if (kappa < 2) throw BadKappa("phi_annihilator: kappa must be >= 2");
  std::vector<fp_t> s(kappa, 0);
  s[0] = 1;
  s[1] = 1;
  return recurrence_annihilator(ctx, kappa, s);
}

/// Generating polynomial of a length-(p-1) coefficient window.
inline FpPoly generating_polynomial(const PrimeContext& ctx, std::span<const fp_t> terms) {
  if (terms.size() != ctx.p() - 1)
    throw LengthMismatch("generating_polynomial: need exactly p-1 terms");
  return FpPoly(std::vector<fp_t>(terms.begin(), terms.end()));
}

/// The monitored cubic X^3 - X - 1.
inline FpPoly cubic_polynomial(const PrimeContext& ctx) {
  return FpPoly({ctx.neg(1), ctx.neg(1), 0, 1});
}

struct CubicRoot {
  fp_t value;
  u32 multiplicity;
  bool operator==(const CubicRoot&) const = default;
};

/// Distinct roots of X^3 - X - 1 in F_p, sorted ascending, with
/// multiplicities. rho counts distinct roots; when rho = 3 the sorted values
/// serve as the labeled triple (alpha, beta, gamma).
struct CubicProfile {
  u32 p = 0;
  u32 rho = 0;
  std::vector<CubicRoot> roots;

  fp_t alpha() const { return labeled(0); }
  fp_t beta() const { return labeled(1); }
  fp_t gamma() const { return labeled(2); }

 private:
  fp_t labeled(std::size_t i) const {
    if (rho != 3) throw WrongRootCount("CubicProfile: labeled triple needs rho = 3");
    return roots[i].value;
  }
};

enum class CubicRootStrategy { Auto, Scan, Gcd };

namespace detail {

inline u32 cubic_multiplicity(const PrimeContext& ctx, fp_t r) {
  // f'(r) = 3r^2 - 1; for p >= 5 a triple root would force r = 0, which is
  // never a root, so multiplicity is 1 or 2.
  fp_t d = ctx.sub(ctx.mul(3 % ctx.p(), ctx.mul(r, r)), 1);
  return d == 0 ? 2 : 1;
}

inline CubicProfile cubic_roots_scan(const PrimeContext& ctx) {
  CubicProfile out;
  out.p = ctx.p();
  const u64 p = ctx.p();
  for (u64 r = 1; r < p; ++r) {  // f(0) = -1, never a root
    u64 v = (r * r % p) * r % p;
    v = (v + 2 * p - r - 1) % p;
    if (v == 0)
      out.roots.push_back({static_cast<fp_t>(r),
                           cubic_multiplicity(ctx, static_cast<fp_t>(r))});
  }
  out.rho = static_cast<u32>(out.roots.size());
  return out;
}

/// gcd(X^p - X, f) isolates the part of f that splits over F_p; the factor
/// has degree <= 3 and is solved directly.
inline CubicProfile cubic_roots_gcd(const PrimeContext& ctx) {
  CubicProfile out;
  out.p = ctx.p();
  const FpPoly f = cubic_polynomial(ctx);
  FpPoly xp = poly_powmod(ctx, FpPoly::x(), ctx.p(), f);
  FpPoly g = poly_gcd(ctx, f, poly_sub(ctx, xp, FpPoly::x()));
  std::vector<fp_t> roots;

  auto linear_root = [&](const FpPoly& lin) {
    return ctx.mul(ctx.neg(lin.coeff(0)), ctx.inv(lin.coeff(1)));
  };
  auto quadratic_roots = [&](const FpPoly& q) {
    // q splits over F_p by construction, so the discriminant is a square.
    fp_t a = q.coeff(2), b = q.coeff(1), c = q.coeff(0);
    fp_t disc = ctx.sub(ctx.mul(b, b), ctx.mul(4 % ctx.p(), ctx.mul(a, c)));
    fp_t s = ctx.sqrt(disc).value();
    fp_t inv2a = ctx.inv(ctx.mul(2, a));
    roots.push_back(ctx.mul(ctx.sub(s, b), inv2a));
    roots.push_back(ctx.mul(ctx.sub(ctx.neg(b), s), inv2a));
  };

  switch (g.degree()) {
    case 0:
      break;
    case 1:
      roots.push_back(linear_root(g));
      break;
    case 2:
      quadratic_roots(g);
      break;
    case 3: {
      // All three roots rational: split off one linear factor with a
      // deterministic sweep of gcd(f, (X+d)^((p-1)/2) - 1).
      FpPoly lin;
      for (fp_t d = 0;; ++d) {
        FpPoly h = poly_powmod(ctx, FpPoly({d, 1}), (ctx.p() - 1) / 2, f);
        h = poly_sub(ctx, h, FpPoly::constant(1));
        FpPoly t = poly_gcd(ctx, f, h);
        if (t.degree() == 1) { lin = t; break; }
        if (t.degree() == 2) { lin = poly_divmod(ctx, f, t).first; break; }
      }
      roots.push_back(linear_root(lin));
      quadratic_roots(poly_divmod(ctx, f, lin).first);
      break;
    }
    default:
      break;
  }

  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  for (fp_t r : roots) out.roots.push_back({r, cubic_multiplicity(ctx, r)});
  out.rho = static_cast<u32>(out.roots.size());
  return out;
}

}  // namespace detail

/// Roots of X^3 - X - 1 in F_p. The O(p) scan doubles as the reference
/// method below 10^6; larger p go through the gcd route.
inline CubicProfile cubic_roots(const PrimeContext& ctx,
                                CubicRootStrategy strategy = CubicRootStrategy::Auto) {
  switch (strategy) {
    case CubicRootStrategy::Scan: return detail::cubic_roots_scan(ctx);
    case CubicRootStrategy::Gcd: return detail::cubic_roots_gcd(ctx);
    case CubicRootStrategy::Auto:
    default:
      return ctx.p() <= 1'000'000 ? detail::cubic_roots_scan(ctx)
                                  : detail::cubic_roots_gcd(ctx);
  }
}

}  // namespace phiseq

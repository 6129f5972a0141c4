#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "phiseq/poly.hpp"

namespace phiseq {

/// One window a_0 .. a_{p-2} of a sequence satisfying
/// a_{n+kappa} = a_n + a_{n+1} with a_0 = 1, plus its verdicts.
/// `periodic` means extending the recurrence reproduces the initial state at
/// indices p-1 .. p+kappa-2, i.e. the two-sided sequence has period p-1.
/// `complete` additionally requires {a_1, ..., a_{p-2}} = {2, ..., p-1}.
class PhiSequence {
 public:
  PhiSequence(PrimeContext ctx, u32 kappa, std::vector<fp_t> terms, bool periodic,
              bool complete)
      : ctx_(std::move(ctx)), kappa_(kappa), terms_(std::move(terms)),
        periodic_(periodic), complete_(complete) {}

  const PrimeContext& context() const { return ctx_; }
  u32 p() const { return ctx_.p(); }
  u32 kappa() const { return kappa_; }
  std::span<const fp_t> terms() const { return terms_; }
  std::span<const fp_t> initial() const { return {terms_.data(), kappa_}; }
  bool periodic() const { return periodic_; }
  bool complete() const { return complete_; }

  bool operator==(const PhiSequence& o) const {
    return ctx_.p() == o.ctx_.p() && kappa_ == o.kappa_ && terms_ == o.terms_;
  }

 private:
  PrimeContext ctx_;
  u32 kappa_;
  std::vector<fp_t> terms_;
  bool periodic_;
  bool complete_;
};

namespace detail {

/// Seen-value table reset by bumping a generation counter instead of
/// refilling; this is the inner loop of every search.
class SeenTable {
 public:
  explicit SeenTable(u32 p) : stamp_(p, 0) {}

  void next_generation() {
    if (++gen_ == 0) {
      std::fill(stamp_.begin(), stamp_.end(), 0);
      gen_ = 1;
    }
  }

  /// True if v was already seen in this generation; marks v either way.
  bool test_and_set(u32 v) {
    if (stamp_[v] == gen_) return true;
    stamp_[v] = gen_;
    return false;
  }

 private:
  std::vector<u32> stamp_;
  u32 gen_ = 0;
};

inline u64 saturating_pow(u64 base, u32 exp) {
  u64 r = 1;
  for (u32 i = 0; i < exp; ++i) {
    if (r > ~u64{0} / base) return ~u64{0};
    r *= base;
  }
  return r;
}

/// Decides completeness of the candidate with the given initial row without
/// materializing it. Aborts on the first zero or repeated value; on a full
/// distinct window it still demands the wraparound back to the initial state.
/// `ring` is caller-provided scratch of size >= kappa.
inline bool complete_candidate(const PrimeContext& ctx, SeenTable& seen,
                               std::span<const fp_t> init, std::vector<fp_t>& ring) {
  const u32 p = ctx.p();
  const u32 kappa = static_cast<u32>(init.size());
  seen.next_generation();
  for (u32 i = 0; i < kappa; ++i) {
    if (init[i] == 0 || seen.test_and_set(init[i])) return false;
    ring[i] = init[i];
  }
  u32 head = 0;  // index of a_{n-kappa} within the ring
  for (u32 n = kappa; n <= p - 2; ++n) {
    u32 next = head + 1 == kappa ? 0 : head + 1;
    u32 v = ring[head] + ring[next];
    if (v >= p) v -= p;
    if (v == 0 || seen.test_and_set(v)) return false;
    ring[head] = v;
    head = next;
  }
  // p-1 distinct nonzero values seen; check the period-(p-1) wraparound.
  for (u32 j = 0; j < kappa; ++j) {
    u32 next = head + 1 == kappa ? 0 : head + 1;
    u32 v = ring[head] + ring[next];
    if (v >= p) v -= p;
    if (v != init[j]) return false;
    ring[head] = v;
    head = next;
  }
  return true;
}

}  // namespace detail

/// Generates a_0 .. a_{p-2} from the initial state and evaluates the
/// periodicity and completeness verdicts.
inline PhiSequence generate(const PrimeContext& ctx, u32 kappa,
                            std::span<const fp_t> initial) {
  const u32 p = ctx.p();
  if (kappa < 2 || kappa > p - 2)
    throw BadKappa("generate: kappa must lie in [2, p-2]");
  if (initial.size() != kappa)
    throw BadInitial("generate: initial state must have exactly kappa entries");
  if (initial[0] != 1) throw BadInitial("generate: a_0 must be 1");
  for (fp_t v : initial)
    if (v >= p) throw BadInitial("generate: initial values must be canonical residues");

  std::vector<fp_t> buf(initial.begin(), initial.end());
  buf.resize(p - 1 + kappa);
  for (u32 n = kappa; n < p - 1 + kappa; ++n)
    buf[n] = ctx.add(buf[n - kappa], buf[n - kappa + 1]);

  bool periodic = std::equal(buf.begin() + (p - 1), buf.end(), buf.begin());

  bool complete = periodic;
  if (complete) {
    std::vector<char> seen(p, 0);
    for (u32 n = 0; n < p - 1; ++n) {
      fp_t v = buf[n];
      if (v == 0 || seen[v]) { complete = false; break; }
      seen[v] = 1;
    }
  }

  buf.resize(p - 1);
  return PhiSequence(ctx, kappa, std::move(buf), periodic, complete);
}

/// If the sequence is a pure power sequence a_n = b^n, returns b.
inline std::optional<fp_t> power_generator(const PhiSequence& seq) {
  const auto& ctx = seq.context();
  auto t = seq.terms();
  fp_t b = t[1];
  if (b == 0) return std::nullopt;
  for (std::size_t n = 1; n < t.size(); ++n)
    if (t[n] != ctx.mul(t[n - 1], b)) return std::nullopt;
  return b;
}

/// For a primitive root b, finds the unique kappa in [2, p-2] with
/// b^kappa = b + 1 and returns the (complete) power sequence b^n.
inline std::pair<u32, PhiSequence> from_primitive_root(const PrimeContext& ctx, fp_t b) {
  if (!ctx.is_primitive_root(b))
    throw NotPrimitiveRoot("from_primitive_root: " + std::to_string(b) +
                           " is not a primitive root mod " + std::to_string(ctx.p()));
  const fp_t target = ctx.add(b, 1);
  u32 kappa = 2;
  fp_t t = ctx.mul(b, b);
  while (t != target) {
    t = ctx.mul(t, b);
    ++kappa;
  }
  std::vector<fp_t> init(kappa);
  init[0] = 1;
  for (u32 i = 1; i < kappa; ++i) init[i] = ctx.mul(init[i - 1], b);
  return {kappa, generate(ctx, kappa, init)};
}

/// All b that are primitive roots and satisfy b^kappa = b + 1, ascending.
inline std::vector<fp_t> phi_kappa_primitive_roots(const PrimeContext& ctx, u32 kappa) {
  const u32 p = ctx.p();
  if (kappa < 2 || kappa > p - 2)
    throw BadKappa("phi_kappa_primitive_roots: kappa must lie in [2, p-2]");
  std::vector<fp_t> out;
  for (fp_t b = 2; b < p; ++b)
    if (ctx.pow(b, kappa) == ctx.add(b, 1) && ctx.is_primitive_root(b))
      out.push_back(b);
  return out;
}

/// Every complete order-kappa sequence, found by trying all p^(kappa-1)
/// initial states (1, a_1, ..., a_{kappa-1}) in lexicographic order.
inline std::vector<PhiSequence> exhaustive_search(const PrimeContext& ctx, u32 kappa,
                                                  u64 state_budget = 1'000'000'000) {
  const u32 p = ctx.p();
  if (kappa < 2 || kappa > p - 2)
    throw BadKappa("exhaustive_search: kappa must lie in [2, p-2]");
  const u64 states = detail::saturating_pow(p, kappa - 1);
  if (states > state_budget)
    throw BudgetExceeded("exhaustive_search: " + std::to_string(states) +
                             " states exceed budget " + std::to_string(state_budget),
                         states);

  detail::SeenTable seen(p);
  std::vector<fp_t> init(kappa, 0), ring(kappa);
  init[0] = 1;
  std::vector<PhiSequence> found;
  for (;;) {
    if (detail::complete_candidate(ctx, seen, init, ring))
      found.push_back(generate(ctx, kappa, init));
    // lexicographic odometer over (a_1, ..., a_{kappa-1})
    u32 i = kappa - 1;
    for (;;) {
      if (++init[i] < p) break;
      init[i] = 0;
      if (--i == 0) return found;
    }
  }
}

/// Complete order-3 sequences found by the coefficient-vanishing relation:
/// any complete order-3 sequence has c = -r*b - 1/r for one of the three
/// cubic roots r, so only 3(p-1) candidate states need checking.
inline std::vector<PhiSequence> guided_search_padovan(const PrimeContext& ctx,
                                                      const CubicProfile& profile) {
  if (profile.rho != 3)
    throw WrongRootCount("guided_search_padovan: needs three distinct cubic roots");
  const u32 p = ctx.p();
  detail::SeenTable seen(p);
  std::vector<fp_t> ring(3);
  std::vector<std::pair<fp_t, fp_t>> hits;
  for (const auto& root : profile.roots) {
    const fp_t r = root.value;
    const fp_t rinv = ctx.inv(r);
    for (fp_t b = 1; b < p; ++b) {
      fp_t c = ctx.neg(ctx.add(ctx.mul(r, b), rinv));
      fp_t init[3] = {1, b, c};
      if (detail::complete_candidate(ctx, seen, init, ring)) hits.emplace_back(b, c);
    }
  }
  std::sort(hits.begin(), hits.end());
  hits.erase(std::unique(hits.begin(), hits.end()), hits.end());
  std::vector<PhiSequence> found;
  for (auto [b, c] : hits) {
    fp_t init[3] = {1, b, c};
    found.push_back(generate(ctx, 3, init));
  }
  return found;
}

inline std::vector<PhiSequence> guided_search_padovan(const PrimeContext& ctx) {
  return guided_search_padovan(ctx, cubic_roots(ctx));
}

/// Index-reversed sequence a~_n = a_{p-1-n}, an order-(p-kappa) sequence.
/// Completeness transfers in both directions; applying it twice returns the
/// original sequence.
inline PhiSequence conjugate(const PhiSequence& seq) {
  if (!seq.periodic()) throw NotPeriodic("conjugate: sequence must be periodic");
  const auto& ctx = seq.context();
  const u32 p = ctx.p();
  const u32 kappa2 = p - seq.kappa();
  auto t = seq.terms();
  std::vector<fp_t> init(kappa2);
  init[0] = 1;  // a~_0 = a_{p-1} = a_0
  for (u32 i = 1; i < kappa2; ++i) init[i] = t[p - 1 - i];
  return generate(ctx, kappa2, init);
}

/// The forced shape of complete sequences at kappa = (p-1)/2 and, through
/// conjugation, at kappa = (p+1)/2: telescoping the recurrence pins
/// a_{n+1} = (p-2) a_n, so the only possible generator is b = p-2
/// (respectively its inverse (p-1)/2), and a complete sequence exists iff
/// that generator is a primitive root.
struct HalfKappaAnalysis {
  u32 kappa_low;      // (p-1)/2
  fp_t b_low;         // p-2
  bool complete_low;  // p-2 is a primitive root
  u32 kappa_high;     // (p+1)/2
  fp_t b_high;        // (p-1)/2
  bool complete_high;
};

inline HalfKappaAnalysis half_kappa_analysis(const PrimeContext& ctx) {
  const u32 p = ctx.p();
  HalfKappaAnalysis out;
  out.kappa_low = (p - 1) / 2;
  out.b_low = p - 2;
  out.complete_low = ctx.is_primitive_root(out.b_low);
  out.kappa_high = (p + 1) / 2;
  out.b_high = (p - 1) / 2;
  out.complete_high = ctx.is_primitive_root(out.b_high);
  return out;
}

inline FpPoly generating_polynomial(const PhiSequence& seq) {
  return generating_polynomial(seq.context(), seq.terms());
}

struct AnnihilationCheck {
  bool holds;
  FpPoly quotient;
};

/// Checks S(X) P(X) = (1 - X^{p-1}) Q(X) for the sequence's own annihilator
/// S and generating polynomial P; returns Q and whether the division is exact.
inline AnnihilationCheck verify_annihilation_identity(const PhiSequence& seq) {
  if (!seq.periodic())
    throw NotPeriodic("verify_annihilation_identity: sequence must be periodic");
  const auto& ctx = seq.context();
  const FpPoly s = phi_annihilator(ctx, seq.kappa());
  const FpPoly prod = poly_mul(ctx, s, generating_polynomial(seq));
  std::vector<fp_t> d(ctx.p(), 0);
  d[0] = 1;
  d[ctx.p() - 1] = ctx.neg(1);
  auto [q, r] = poly_divmod(ctx, prod, FpPoly(std::move(d)));
  return {r.is_zero(), std::move(q)};
}

}  // namespace phiseq

#include <algorithm>

#include "doctest.h"
#include "oracles.hpp"
#include "phiseq/sequence.hpp"

using namespace phiseq;

namespace {

std::vector<fp_t> power_terms(const PrimeContext& ctx, fp_t b) {
  std::vector<fp_t> t(ctx.p() - 1);
  t[0] = 1;
  for (std::size_t i = 1; i < t.size(); ++i) t[i] = ctx.mul(t[i - 1], b);
  return t;
}

}  // namespace

TEST_CASE("generate: the unique complete order-2 sequence mod 5") {
  PrimeContext ctx(5);
  const fp_t init[2] = {1, 3};
  auto seq = generate(ctx, 2, init);
  CHECK(seq.terms()[0] == 1);
  CHECK(seq.terms()[1] == 3);
  CHECK(seq.terms()[2] == 4);
  CHECK(seq.terms()[3] == 2);
  CHECK(seq.periodic());
  CHECK(seq.complete());
}

TEST_CASE("generate: order-3 examples") {
  PrimeContext f7(7);
  const fp_t good[3] = {1, 5, 4};
  auto seq = generate(f7, 3, good);
  CHECK(seq.complete());
  CHECK(std::vector<fp_t>(seq.terms().begin(), seq.terms().end()) ==
        std::vector<fp_t>{1, 5, 4, 6, 2, 3});

  PrimeContext f23(23);
  const fp_t bad[3] = {1, 3, 9};
  CHECK_FALSE(generate(f23, 3, bad).complete());
}

TEST_CASE("generate: input validation") {
  PrimeContext ctx(7);
  const fp_t too_short[2] = {1, 5};
  CHECK_THROWS_AS(generate(ctx, 3, too_short), BadInitial);
  const fp_t wrong_head[3] = {2, 5, 4};
  CHECK_THROWS_AS(generate(ctx, 3, wrong_head), BadInitial);
  const fp_t not_reduced[3] = {1, 9, 4};
  CHECK_THROWS_AS(generate(ctx, 3, not_reduced), BadInitial);
  const fp_t any1[1] = {1};
  CHECK_THROWS_AS(generate(ctx, 1, any1), BadKappa);
  const fp_t any2[2] = {1, 5};
  CHECK_THROWS_AS(generate(ctx, 6, any2), BadKappa);  // kappa > p-2
}

TEST_CASE("generate matches the index-arithmetic oracle") {
  for (u32 p : {7u, 11u, 13u}) {
    PrimeContext ctx(p);
    for (u32 kappa = 2; kappa <= 4 && kappa <= p - 2; ++kappa)
      for (fp_t b = 0; b < p; ++b) {
        std::vector<fp_t> init(kappa, b);
        init[0] = 1;
        auto seq = generate(ctx, kappa, init);
        auto want = oracles::recurrence_terms(p, kappa, {init.begin(), init.end()}, p - 1);
        CHECK(std::equal(seq.terms().begin(), seq.terms().end(), want.begin()));
      }
  }
}

TEST_CASE("from_primitive_root: known offsets") {
  PrimeContext f7(7);
  auto [k5, s5] = from_primitive_root(f7, 5);
  CHECK(k5 == 3);
  CHECK(s5.complete());
  CHECK(std::vector<fp_t>(s5.terms().begin(), s5.terms().end()) ==
        std::vector<fp_t>{1, 5, 4, 6, 2, 3});

  auto [k3, s3] = from_primitive_root(f7, 3);
  CHECK(k3 == 4);
  CHECK(s3.complete());

  PrimeContext f5(5);
  auto r2 = from_primitive_root(f5, 2);
  CHECK(r2.first == 3);

  CHECK_THROWS_AS(from_primitive_root(f7, 2), NotPrimitiveRoot);  // order 3
  CHECK_THROWS_AS(from_primitive_root(f7, 0), NotPrimitiveRoot);
}

TEST_CASE("every primitive root of every p <= 1000 gives a complete sequence with a unique offset") {
  for (u32 p : primes_in_range(5, 1000)) {
    PrimeContext ctx(p);
    for (fp_t b = 2; b < p; ++b) {
      if (!ctx.is_primitive_root(b)) continue;
      auto [kappa, seq] = from_primitive_root(ctx, b);
      CHECK(seq.complete());
      CHECK(kappa >= 2);
      CHECK(kappa <= p - 2);
      CHECK(ctx.pow(b, kappa) == ctx.add(b, 1));
      // uniqueness: walk all powers once and count solutions of b^k = b+1
      u32 solutions = 0;
      fp_t t = b;
      for (u32 k = 1; k <= p - 1; ++k) {
        if (t == ctx.add(b, 1)) ++solutions;
        t = ctx.mul(t, b);
      }
      CHECK(solutions == 1);
    }
  }
}

TEST_CASE("phi_kappa_primitive_roots: known values") {
  CHECK(phi_kappa_primitive_roots(PrimeContext(23), 3) == std::vector<fp_t>{10});
  CHECK(phi_kappa_primitive_roots(PrimeContext(7), 3) == std::vector<fp_t>{5});
  CHECK(phi_kappa_primitive_roots(PrimeContext(13), 6) == std::vector<fp_t>{11});
  CHECK_THROWS_AS(phi_kappa_primitive_roots(PrimeContext(7), 6), BadKappa);
}

TEST_CASE("power_generator recognizes power sequences and rejects others") {
  PrimeContext ctx(7);
  const fp_t init[3] = {1, 5, 4};
  CHECK(power_generator(generate(ctx, 3, init)) == 5);
  const fp_t other[3] = {1, 5, 2};
  CHECK_FALSE(power_generator(generate(ctx, 3, other)).has_value());
}

TEST_CASE("exhaustive_search: unique hits at small primes") {
  PrimeContext f7(7);
  auto found7 = exhaustive_search(f7, 3);
  REQUIRE(found7.size() == 1);
  CHECK(std::vector<fp_t>(found7[0].initial().begin(), found7[0].initial().end()) ==
        std::vector<fp_t>{1, 5, 4});

  PrimeContext f5(5);
  auto found5 = exhaustive_search(f5, 2);
  REQUIRE(found5.size() == 1);
  CHECK(found5[0].terms()[1] == 3);

  PrimeContext f23(23);
  auto found23 = exhaustive_search(f23, 3);
  REQUIRE(found23.size() == 1);
  CHECK(power_generator(found23[0]) == 10);
}

TEST_CASE("exhaustive_search: budget is enforced with the required count") {
  PrimeContext ctx(23);
  try {
    exhaustive_search(ctx, 5, 1000);
    FAIL("expected BudgetExceeded");
  } catch (const BudgetExceeded& e) {
    CHECK(e.required_states == 279841);  // 23^4
  }
}

TEST_CASE("guided search equals its specification at known primes") {
  PrimeContext f59(59);
  auto found59 = guided_search_padovan(f59);
  REQUIRE(found59.size() == 2);
  CHECK(power_generator(found59[0]) == 13);
  CHECK(power_generator(found59[1]) == 42);

  PrimeContext f101(101);
  auto found101 = guided_search_padovan(f101);
  REQUIRE(found101.size() == 2);
  CHECK(power_generator(found101[0]) == 89);
  CHECK(power_generator(found101[1]) == 93);

  CHECK_THROWS_AS(guided_search_padovan(PrimeContext(7)), WrongRootCount);
}

TEST_CASE("guided search at p=5851 finds sequences whose a_1 is a cubic root") {
  PrimeContext ctx(5851);
  auto prof = cubic_roots(ctx);
  REQUIRE(prof.rho == 3);
  auto found = guided_search_padovan(ctx, prof);
  CHECK(!found.empty());
  for (const auto& seq : found) {
    const fp_t a1 = seq.terms()[1];
    bool is_root = false;
    for (const auto& r : prof.roots) is_root = is_root || r.value == a1;
    CHECK(is_root);
    CHECK(seq.complete());
  }
}

TEST_CASE("guided and exhaustive searches agree for every rho=3 prime up to 500") {
  for (u32 p : primes_in_range(5, 500)) {
    PrimeContext ctx(p);
    auto prof = cubic_roots(ctx);
    if (prof.rho != 3) continue;
    auto guided = guided_search_padovan(ctx, prof);
    auto exhaustive = exhaustive_search(ctx, 3);
    CHECK(guided.size() == exhaustive.size());
    CHECK(std::equal(guided.begin(), guided.end(), exhaustive.begin()));
  }
}

TEST_CASE("conjugate: reversal, offsets, completeness transfer") {
  PrimeContext f5(5);
  const fp_t fib[2] = {1, 3};
  auto seq = generate(f5, 2, fib);
  auto conj = conjugate(seq);
  CHECK(conj.kappa() == 3);
  CHECK(std::vector<fp_t>(conj.terms().begin(), conj.terms().end()) ==
        std::vector<fp_t>{1, 2, 4, 3});
  CHECK(conj.complete());
  CHECK(phi_kappa_primitive_roots(f5, 3) == std::vector<fp_t>{2});
  CHECK(conjugate(conj) == seq);

  PrimeContext f7(7);
  const fp_t pad[3] = {1, 5, 4};
  auto conj7 = conjugate(generate(f7, 3, pad));
  CHECK(conj7.kappa() == 4);
  CHECK(conj7.complete());
  CHECK(power_generator(conj7) == 3);

  const fp_t rough[3] = {1, 1, 1};
  CHECK_THROWS_AS(conjugate(generate(f7, 3, rough)), NotPeriodic);
}

TEST_CASE("conjugate is an involution mapping complete to complete, p <= 200") {
  for (u32 p : primes_in_range(5, 200)) {
    PrimeContext ctx(p);
    for (fp_t b = 2; b < p; ++b) {
      if (!ctx.is_primitive_root(b)) continue;
      auto [kappa, seq] = from_primitive_root(ctx, b);
      auto conj = conjugate(seq);
      CHECK(conj.kappa() == p - kappa);
      CHECK(conj.complete() == seq.complete());
      CHECK(conjugate(conj) == seq);
    }
    // periodic but incomplete sequences keep their verdict through conjugation
    auto prof = cubic_roots(ctx);
    if (prof.rho == 3) {
      for (fp_t b = 1; b < std::min<u32>(p, 12); ++b) {
        const fp_t g = prof.roots[0].value;
        const fp_t init[3] = {1, b, ctx.neg(ctx.add(ctx.mul(g, b), ctx.inv(g)))};
        auto seq = generate(ctx, 3, init);
        if (!seq.periodic()) continue;
        auto conj = conjugate(seq);
        CHECK(conj.complete() == seq.complete());
        CHECK(conjugate(conj) == seq);
      }
    }
  }
}

TEST_CASE("half-offset analysis: forced generators") {
  auto h13 = half_kappa_analysis(PrimeContext(13));
  CHECK(h13.kappa_low == 6);
  CHECK(h13.b_low == 11);
  CHECK(h13.complete_low);
  CHECK(h13.kappa_high == 7);
  CHECK(h13.b_high == 6);
  CHECK(h13.complete_high);

  auto h11 = half_kappa_analysis(PrimeContext(11));
  CHECK(h11.b_low == 9);
  CHECK_FALSE(h11.complete_low);
  CHECK_FALSE(h11.complete_high);

  auto h5 = half_kappa_analysis(PrimeContext(5));
  CHECK(h5.kappa_low == 2);
  CHECK(h5.b_low == 3);
  CHECK(h5.complete_low);
}

TEST_CASE("half-offset generators agree with exhaustive search up to 13") {
  for (u32 p : primes_in_range(5, 13)) {
    PrimeContext ctx(p);
    auto h = half_kappa_analysis(ctx);
    auto low = exhaustive_search(ctx, h.kappa_low);
    auto high = exhaustive_search(ctx, h.kappa_high);
    if (h.complete_low) {
      REQUIRE(low.size() == 1);
      REQUIRE(high.size() == 1);
      CHECK(power_generator(low[0]) == h.b_low);
      CHECK(power_generator(high[0]) == h.b_high);
    } else {
      CHECK(low.empty());
      CHECK(high.empty());
    }
  }
}

TEST_CASE("conjecture slice: exhaustive search finds exactly the power sequences, p <= 200") {
  for (u32 p : primes_in_range(5, 200)) {
    PrimeContext ctx(p);
    for (u32 kappa = 2; kappa <= p - 2; ++kappa) {
      if (detail::saturating_pow(p, kappa - 1) > 10'000'000) break;
      auto found = exhaustive_search(ctx, kappa, 10'000'000);
      auto roots = phi_kappa_primitive_roots(ctx, kappa);
      REQUIRE(found.size() == roots.size());
      for (std::size_t i = 0; i < found.size(); ++i) {
        CHECK(found[i].complete());
        CHECK(power_generator(found[i]) == roots[i]);
        CHECK(std::equal(found[i].terms().begin(), found[i].terms().end(),
                         power_terms(ctx, roots[i]).begin()));
      }
    }
  }
}

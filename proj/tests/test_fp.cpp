#include <numeric>

#include "doctest.h"
#include "oracles.hpp"
#include "phiseq/fp.hpp"

using namespace phiseq;

TEST_CASE("is_prime agrees with trial division up to 20000") {
  for (u64 n = 0; n <= 20000; ++n) CHECK(is_prime(n) == oracles::trial_division_prime(n));
}

TEST_CASE("is_prime handles known large cases") {
  CHECK(is_prime(2147483647));  // 2^31 - 1
  CHECK(is_prime(98801));
  CHECK_FALSE(is_prime(561));    // Carmichael
  CHECK_FALSE(is_prime(46657));  // Carmichael
  CHECK_FALSE(is_prime(u64{46349} * 46351));
}

TEST_CASE("primes_in_range basics") {
  CHECK(primes_in_range(5, 11) == std::vector<u32>{5, 7, 11});
  CHECK(primes_in_range(23, 23) == std::vector<u32>{23});
  CHECK(primes_in_range(24, 28) == std::vector<u32>{});
  CHECK_THROWS_AS(primes_in_range(10, 5), Error);
  CHECK_THROWS_AS(primes_in_range(2, u64{1} << 31), InvalidPrime);
}

TEST_CASE("primes_in_range matches the sieve oracle and the known pi(10^5)") {
  const auto got = primes_in_range(2, 100000);
  CHECK(got.size() == 9592);
  CHECK(got == oracles::sieve_primes(2, 100000));
}

TEST_CASE("primes_in_range above the sieve threshold uses point queries") {
  const auto got = primes_in_range(10'000'019, 10'000'200);
  for (u32 p : got) CHECK(oracles::trial_division_prime(p));
  CHECK(got.front() == 10'000'019);
  CHECK(got == primes_in_range(10'000'019, 10'000'200));
}

TEST_CASE("PrimeContext validates its prime") {
  CHECK_THROWS_AS(PrimeContext(4), InvalidPrime);
  CHECK_THROWS_AS(PrimeContext(6), InvalidPrime);
  CHECK_THROWS_AS(PrimeContext(2), InvalidPrime);
  CHECK_THROWS_AS(PrimeContext(3), InvalidPrime);
  CHECK_NOTHROW(PrimeContext(5));
  CHECK_NOTHROW(PrimeContext(2147483647));
}

TEST_CASE("PrimeContext factorization multiplies back to p-1") {
  for (u32 p : primes_in_range(5, 2000)) {
    PrimeContext ctx(p);
    u64 prod = 1;
    for (const auto& [q, e] : ctx.factors_p_minus_1()) {
      CHECK(is_prime(q));
      for (u32 i = 0; i < e; ++i) prod *= q;
    }
    CHECK(prod == p - 1);
  }
  PrimeContext big(98801);
  u64 prod = 1;
  for (const auto& [q, e] : big.factors_p_minus_1())
    for (u32 i = 0; i < e; ++i) prod *= q;
  CHECK(prod == 98800);
}

TEST_CASE("pow: known values") {
  PrimeContext f5(5), f101(101);
  CHECK(f5.pow(3, 4) == 1);
  CHECK(f5.pow(0, 0) == 1);
  CHECK(f101.pow(7, 0) == 1);
  CHECK(f101.pow(20, 3) == 21);  // direct: 20*20*20 mod 101
  u64 direct = 20ull * 20 % 101 * 20 % 101;
  CHECK(f101.pow(20, 3) == direct);
}

TEST_CASE("inv: known values, error path, involution") {
  PrimeContext f7(7), f59(59);
  CHECK(f7.inv(1) == 1);
  CHECK(f59.inv(42) == 52);
  CHECK(f59.inv(42) == oracles::egcd_inverse(42, 59));
  CHECK_THROWS_AS(f7.inv(0), ZeroInverse);
  for (u32 p : {7u, 59u, 997u}) {
    PrimeContext ctx(p);
    for (fp_t a = 1; a < p; ++a) {
      CHECK(ctx.mul(a, ctx.inv(a)) == 1);
      CHECK(ctx.inv(ctx.inv(a)) == a);
      CHECK(ctx.inv(a) == oracles::egcd_inverse(a, p));
    }
  }
}

TEST_CASE("order: known values and error path") {
  PrimeContext f5(5), f59(59);
  CHECK(f5.order(1) == 1);
  CHECK(f5.order(3) == 4);
  CHECK(f59.order(27) == 29);
  CHECK(f59.mul(13, f59.inv(42)) == 27);
  CHECK_THROWS_AS(f5.order(0), ZeroOrderInput);
}

TEST_CASE("order properties: divides p-1, minimal over divisors") {
  for (u32 p : {11u, 23u, 59u, 101u, 997u}) {
    PrimeContext ctx(p);
    for (fp_t a = 1; a < p; ++a) {
      const u32 m = ctx.order(a);
      CHECK((p - 1) % m == 0);
      CHECK(ctx.pow(a, m) == 1);
      CHECK(m == oracles::brute_order(a, p));
      for (u32 d = 1; d < m; ++d)
        if (m % d == 0) CHECK(ctx.pow(a, d) != 1);
    }
  }
}

TEST_CASE("is_primitive_root: known values") {
  CHECK(PrimeContext(7).is_primitive_root(3));
  CHECK(PrimeContext(23).is_primitive_root(10));
  CHECK_FALSE(PrimeContext(11).is_primitive_root(9));
  CHECK_FALSE(PrimeContext(11).is_primitive_root(0));
}

TEST_CASE("geometric_sum: closed form and error path") {
  PrimeContext f7(7);
  CHECK(f7.geometric_sum(1) == 6);
  CHECK(f7.geometric_sum(3) == 0);
  CHECK_THROWS_AS(f7.geometric_sum(0), ZeroBase);
}

TEST_CASE("geometric_sum equals the loop for every x, every p <= 200") {
  for (u32 p : primes_in_range(5, 200)) {
    PrimeContext ctx(p);
    for (fp_t x = 1; x < p; ++x)
      CHECK(ctx.geometric_sum(x) == oracles::loop_geometric_sum(x, p));
  }
}

TEST_CASE("sqrt finds square roots exactly for quadratic residues") {
  for (u32 p : {5u, 13u, 17u, 97u, 101u, 577u}) {
    PrimeContext ctx(p);
    u32 residues = 0;
    for (fp_t a = 1; a < p; ++a) {
      auto r = ctx.sqrt(a);
      if (r) {
        ++residues;
        CHECK(ctx.mul(*r, *r) == a);
      }
    }
    CHECK(residues == (p - 1) / 2);
  }
}

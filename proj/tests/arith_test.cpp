#include <doctest.h>

#include <random>

#include "lroot/arith.hpp"

using namespace lroot;

namespace {

// Exponent of (Z/nZ)* as the lcm of element orders found by stepping powers.
u64 brute_exponent(u64 n) {
  u64 e = 1;
  for (u64 a = 1; a < n; ++a) {
    if (std::gcd(a, n) != 1) continue;
    u64 k = 1, x = a % n;
    while (x != 1 % n) {
      x = x * a % n;
      ++k;
    }
    e = std::lcm(e, k);
  }
  return e;
}

u64 brute_phi(u64 n) {
  u64 c = 0;
  for (u64 a = 1; a <= n; ++a) c += std::gcd(a, n) == 1;
  return c;
}

}  // namespace

TEST_SUITE("arith") {

TEST_CASE("factorization round trips") {
  for (u64 n : {1ULL, 2ULL, 12ULL, 97ULL, 1024ULL, 999983ULL * 1000003ULL, (1ULL << 61) - 1, 600851475143ULL}) {
    const FactoredInt f(n);
    u64 prod = 1;
    u64 last = 1;
    for (const auto& pp : f.factors()) {
      CHECK(is_prime(pp.prime));
      CHECK(pp.prime > last);
      CHECK(pp.exponent >= 1);
      last = pp.prime;
      for (int i = 0; i < pp.exponent; ++i) prod *= pp.prime;
    }
    CHECK(prod == n);
  }
  CHECK(FactoredInt(1).is_one());
  CHECK(FactoredInt(360) == FactoredInt::from_factors({{2, 3}, {3, 2}, {5, 1}}));
}

TEST_CASE("factorization rejects bad input") {
  CHECK_THROWS_AS(FactoredInt(0), std::invalid_argument);
  CHECK_THROWS_AS(FactoredInt((1ULL << 63) + 1), std::invalid_argument);
  CHECK_THROWS_AS(FactoredInt::from_factors({{4, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(FactoredInt::from_factors({{3, 1}, {2, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(FactoredInt::from_factors({{3, 0}}), std::invalid_argument);
}

TEST_CASE("primality against the sieve") {
  const auto primes = primes_up_to(100000);
  std::vector<bool> mark(100001, false);
  for (u64 p : primes) mark[p] = true;
  for (u64 n = 0; n <= 100000; ++n) REQUIRE(is_prime(n) == mark[n]);
  CHECK(is_prime((1ULL << 61) - 1));
  CHECK_FALSE(is_prime(3215031751ULL));  // strong pseudoprime to bases 2, 3, 5, 7
  CHECK(primes.size() == 9592);
}

TEST_CASE("lambda matches the brute-force exponent") {
  CHECK(carmichael_lambda(1) == 1);
  CHECK(carmichael_lambda(2) == 1);
  CHECK(carmichael_lambda(4) == 2);
  CHECK(carmichael_lambda(8) == 2);
  CHECK(carmichael_lambda(16) == 4);
  CHECK(carmichael_lambda(15) == 4);
  CHECK(carmichael_lambda(561) == 80);
  for (u64 n = 1; n <= 3000; ++n) {
    const u64 l = carmichael_lambda(n);
    REQUIRE(l == brute_exponent(n));
    REQUIRE(euler_phi(n) % l == 0);
  }
}

TEST_CASE("lambda divides phi up to 10^4") {
  for (u64 n = 1; n <= 10000; ++n) REQUIRE(euler_phi(n) % carmichael_lambda(n) == 0);
}

TEST_CASE("phi against counting and table") {
  const auto table = phi_table(2000);
  for (u64 n = 1; n <= 2000; ++n) {
    REQUIRE(euler_phi(n) == brute_phi(n));
    REQUIRE(table[n] == euler_phi(n));
  }
}

TEST_CASE("phi is multiplicative on random coprime pairs") {
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<u64> dist(1, 1'000'000);
  int tested = 0;
  while (tested < 500) {
    const u64 a = dist(rng), b = dist(rng);
    if (gcd(a, b) != 1) continue;
    REQUIRE(euler_phi(a * b) == euler_phi(a) * euler_phi(b));
    REQUIRE(carmichael_lambda(a * b) == lcm(carmichael_lambda(a), carmichael_lambda(b)));
    ++tested;
  }
}

TEST_CASE("small multiplicative functions") {
  CHECK(rad(1) == 1);
  CHECK(rad(72) == 6);
  CHECK(mobius(1) == 1);
  CHECK(mobius(30) == -1);
  CHECK(mobius(12) == 0);
  CHECK(omega(360) == 3);
  CHECK(tau(360) == 24);
  CHECK(valuation(48, 2) == 4);
  CHECK(valuation(7, 2) == 0);
  const auto p = profile(FactoredInt(360));
  CHECK(p.phi == 96);
  CHECK(p.lambda == 12);
  CHECK(p.rad == 30);
  CHECK(p.mu == 0);
}

TEST_CASE("multiplicative order") {
  CHECK(multiplicative_order(2, 7) == 3);
  CHECK(multiplicative_order(3, 7) == 6);
  CHECK(multiplicative_order(1, 1) == 1);
  CHECK(multiplicative_order(5, 1) == 1);
  CHECK_THROWS_AS(multiplicative_order(2, 4), std::invalid_argument);
  for (u64 n = 1; n <= 2000; ++n) {
    const FactoredInt f(n);
    const u64 l = carmichael_lambda(f);
    for (u64 a = 1; a < n; a += 7) {
      if (gcd(a, n) != 1) continue;
      const u64 o = multiplicative_order(a, f);
      REQUIRE(l % o == 0);
      REQUIRE(pow_mod(a, o, n) == 1 % n);
    }
  }
}

TEST_CASE("modular arithmetic near 2^63") {
  const u64 m = (1ULL << 61) - 1;
  CHECK(mul_mod(m - 1, m - 1, m) == 1);
  CHECK(pow_mod(3, m - 1, m) == 1);
  CHECK(pow_mod(5, 0, 1) == 0);
}

TEST_CASE("factor sieve agrees with factorize") {
  const FactorSieve sieve(50000);
  for (u64 n = 1; n <= 50000; ++n) REQUIRE(sieve.factor(n) == factorize(n));
  CHECK(sieve.primes().size() == 5133);
  CHECK_THROWS(sieve.factor(50001));
}

}

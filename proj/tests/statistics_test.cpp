#include <doctest.h>

#include <cmath>

#include "lroot/statistics.hpp"
#include "lroot/unit_group.hpp"

using namespace lroot;

namespace {

u64 n_count_brute(u64 a, u64 x) {
  u64 c = 0;
  for (u64 n = 1; n <= x; ++n) c += is_lambda_primitive_root(a, FactoredInt(n));
  return c;
}

BigRational moment_brute(u64 x, u64 y) {
  BigRational mean = 0;
  for (u64 n = 1; n <= x; ++n) mean += make_rational(static_cast<long>(r_count(FactoredInt(n))), static_cast<long>(n));
  BigRational s = 0;
  for (u64 a = 1; a <= y; ++a) {
    const BigRational d = BigRational(n_count_brute(a, x)) - mean;
    s += d * d;
  }
  return s / y;
}

}  // namespace

TEST_SUITE("statistics") {

TEST_CASE("n_count examples") {
  CHECK(n_count(2, 10) == 4);
  CHECK(n_count(1, 10) == 2);
  CHECK(n_count(7, 1) == 1);
  for (u64 a = 1; a <= 30; ++a) {
    for (u64 x : {1, 2, 17, 64, 150}) REQUIRE(n_count(a, x) == n_count_brute(a, x));
  }
}

TEST_CASE("p_count examples") {
  CHECK(p_count(2, 20) == 5);
  CHECK(p_count(1, 100) == 1);
  for (u64 x : {5, 100, 10000}) CHECK(p_count(4, x) == 0);
  CHECK(p_count(3, 1) == 0);
}

TEST_CASE("prime restriction of N_a and P_a") {
  for (u64 p : primes_up_to(500)) {
    for (u64 a = 1; a <= 100; ++a) {
      const bool lam = is_lambda_primitive_root(a, FactoredInt(p));
      const bool prim = a % p != 0 && multiplicative_order(a, p) == p - 1;
      REQUIRE(lam == prim);
    }
  }
  // Differences of P_a(x) step exactly at qualifying primes.
  for (u64 a = 1; a <= 12; ++a) {
    for (u64 p : primes_up_to(200)) {
      const bool prim = a % p != 0 && multiplicative_order(a, p) == p - 1;
      REQUIRE(p_count(a, p) - p_count(a, p - 1) == (prim ? 1u : 0u));
    }
  }
}

TEST_CASE("n_counts batch agrees with single queries") {
  const auto counts = n_counts(MomentConfig{300, 40, true}, 4);
  for (u64 a = 1; a <= 40; ++a) REQUIRE(counts[a - 1] == n_count(a, 300));
  const auto without = n_counts(MomentConfig{300, 40, false}, 3);
  for (u64 a = 1; a <= 40; ++a) REQUIRE(without[a - 1] + 1 == counts[a - 1]);
}

TEST_CASE("mean sums") {
  CHECK(mean_sum(1) == 1);
  CHECK(mean_sum(3) == make_rational(11, 6));
  BigRational m = 0;
  for (u64 n = 1; n <= 10; ++n) m += make_rational(static_cast<long>(r_count(FactoredInt(n))), static_cast<long>(n));
  CHECK(mean_sum(10) == m);
  CHECK(mean_sum(MomentConfig{10, 1, false}) == m - 1);
}

TEST_CASE("second moment") {
  CHECK(second_moment(MomentConfig{1, 9, true}) == 0);
  CHECK(second_moment(MomentConfig{10, 10, true}) == moment_brute(10, 10));
  CHECK(second_moment(MomentConfig{37, 23, true}) == moment_brute(37, 23));
  CHECK(second_moment(MomentConfig{200, 200, true}, 1) == second_moment(MomentConfig{200, 200, true}, 7));
  CHECK(second_moment(MomentConfig{50, 50, true}) >= 0);
  CHECK_THROWS_AS(second_moment(MomentConfig{100'000, 10'000, true}), BudgetExceeded);
}

TEST_CASE("sigma1 forms") {
  CHECK(sigma1_direct(1) == 0);
  CHECK(sigma1_direct(2) == make_rational(1, 4));
  CHECK(sigma1_gcd_form(2) == make_rational(1, 4));
  for (u64 x = 1; x <= 60; ++x) REQUIRE(sigma1_direct(x) == sigma1_gcd_form(x));
  CHECK(sigma1_direct(120, 1) == sigma1_direct(120, 6));
  CHECK(sigma1_direct(50) >= 0);
  CHECK_THROWS_AS(sigma1_direct(kSigma1Limit + 1), std::out_of_range);
}

TEST_CASE("phi(phi(n)) sums") {
  CHECK(phi_phi_sum(1) == 1);
  CHECK(phi_phi_sum(10) == 15);
  BigRational m = 0;
  for (u64 n = 1; n <= 50; ++n) m += make_rational(static_cast<long>(euler_phi(euler_phi(n))), static_cast<long>(n));
  CHECK(phi_phi_mean(50) == m);
  for (u64 x : {1, 10, 100, 1000}) CHECK(mean_sum(x) >= phi_phi_mean(x));
}

TEST_CASE("corollary density") {
  CHECK(corollary_density(FactoredInt(1)) == 1);
  CHECK(corollary_density(FactoredInt(2)) == make_rational(1, 3));
  CHECK(corollary_density(FactoredInt(6)) == make_rational(1, 12));
}

TEST_CASE("second moment split is exact") {
  for (auto [x, y] : {std::pair<u64, u64>{1, 1}, {10, 10}, {25, 7}, {60, 100}, {100, 100}}) {
    const auto s = second_moment_split(x, y);
    REQUIRE(s.lhs == s.y_sigma1 + s.sigma2 + s.e_exact);
    REQUIRE(s.lhs == second_moment(MomentConfig{x, y, true}) * BigRational(y));
  }
  CHECK_THROWS_AS(second_moment_split(kSplitLimit + 1, 5), std::out_of_range);
}

TEST_CASE("sweep report") {
  const auto small = sweep_report(MomentConfig{10, 10, true}, 2);
  CHECK(small.ratios.empty());
  CHECK(small.phi_phi_sum == 15);
  const auto r = sweep_report(MomentConfig{100, 100, true}, 2);
  CHECK(r.mean == mean_sum(100));
  CHECK(r.sigma1 == sigma1_direct(100));
  REQUIRE(r.ratios.size() == 4);
  for (const auto& [name, v] : r.ratios) CHECK((std::isfinite(v) && v > 0));
  CHECK_THROWS_AS(logloglog(15), std::domain_error);
}

}

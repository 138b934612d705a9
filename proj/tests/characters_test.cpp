#include <doctest.h>

#include <algorithm>
#include <complex>
#include <numbers>
#include <numeric>

#include "lroot/characters.hpp"
#include "lroot/cyclotomic.hpp"

using namespace lroot;

namespace {

std::vector<u64> sorted_orders(u64 n) {
  std::vector<u64> out;
  for (const auto& chi : CharacterGroup(FactoredInt(n)).characters()) out.push_back(chi.order);
  std::sort(out.begin(), out.end());
  return out;
}

std::complex<double> value(const CharacterGroup& g, const Character& chi, u64 a) {
  const double t = 2 * std::numbers::pi * static_cast<double>(g.value_index(chi, a)) / static_cast<double>(g.lambda());
  return {std::cos(t), std::sin(t)};
}

}  // namespace

TEST_SUITE("characters") {

TEST_CASE("cyclotomic polynomials") {
  CHECK(cyclotomic_polynomial(1) == std::vector<std::int64_t>{-1, 1});
  CHECK(cyclotomic_polynomial(6) == std::vector<std::int64_t>{1, -1, 1});
  CHECK(cyclotomic_polynomial(12) == std::vector<std::int64_t>{1, 0, -1, 0, 1});
  const auto p105 = cyclotomic_polynomial(105);
  CHECK(p105.size() == 49);
  CHECK(*std::min_element(p105.begin(), p105.end()) == -2);
}

TEST_CASE("cyclotomic reduction") {
  const CyclotomicReducer r3(3);
  // 1 + ζ + ζ^2 = 0, ζ + ζ^2 = -1, ζ alone is irrational.
  CHECK(r3.as_integer(std::vector<std::int64_t>{1, 1, 1}) == 0);
  CHECK(r3.as_integer(std::vector<std::int64_t>{0, 1, 1}) == -1);
  CHECK_FALSE(r3.as_integer(std::vector<std::int64_t>{0, 1, 0}).has_value());
  const CyclotomicReducer r1(1);
  CHECK(r1.as_integer(std::vector<std::int64_t>{7}) == 7);
}

TEST_CASE("group sizes and orders") {
  CHECK(sorted_orders(1) == std::vector<u64>{1});
  CHECK(sorted_orders(5) == std::vector<u64>{1, 2, 4, 4});
  CHECK(sorted_orders(8) == std::vector<u64>{1, 2, 2, 2});
  for (u64 n = 1; n <= 300; ++n) {
    const CharacterGroup g{FactoredInt(n)};
    const auto chars = g.characters();
    REQUIRE(chars.size() == g.phi());
    REQUIRE(std::all_of(chars[0].exponents.begin(), chars[0].exponents.end(), [](u64 e) { return e == 0; }));
    for (std::size_t i = 0; i < chars.size(); ++i) REQUIRE(g.index_of(chars[i].exponents) == i);
  }
  CHECK_THROWS_AS(CharacterGroup(FactoredInt(kCharacterLimit + 1)), std::out_of_range);
}

TEST_CASE("discrete logs reproduce units") {
  for (u64 n : {2, 4, 8, 9, 15, 16, 24, 97, 360, 1024, 2310}) {
    const CharacterGroup g{FactoredInt(n)};
    const auto gens = g.generators();
    for (u64 a = 1; a < n; ++a) {
      if (!g.is_unit(a)) continue;
      const auto d = g.dlog(a);
      u64 x = 1 % n;
      for (std::size_t i = 0; i < d.size(); ++i) x = x * pow_mod(gens[i], static_cast<u64>(d[i]), n) % n;
      REQUIRE(x == a);
    }
  }
}

TEST_CASE("orthogonality") {
  for (u64 n : {5, 8, 12, 21, 45, 64}) {
    const CharacterGroup g{FactoredInt(n)};
    const auto chars = g.characters();
    for (std::size_t i = 0; i < chars.size(); ++i) {
      for (std::size_t j = 0; j < chars.size(); ++j) {
        std::complex<double> s = 0;
        for (u64 a = 1; a <= n; ++a) {
          if (g.is_unit(a)) s += value(g, chars[i], a) * std::conj(value(g, chars[j], a));
        }
        const double expected = i == j ? static_cast<double>(g.phi()) : 0.0;
        REQUIRE(std::abs(s - expected) < 1e-9);
      }
    }
  }
}

TEST_CASE("elementary flag agrees with triviality on E(n)") {
  for (u64 n = 1; n <= 400; ++n) {
    const CharacterGroup g{FactoredInt(n)};
    const auto e = g.e_subgroup();
    for (const auto& chi : g.characters()) REQUIRE(g.trivial_on(chi, e) == chi.is_elementary);
  }
}

TEST_CASE("rho examples and errors") {
  CHECK(rho(FactoredInt(5), 1) == 1);
  CHECK(rho(FactoredInt(5), 2) == 1);
  CHECK(rho(FactoredInt(24), 2) == 7);
  CHECK(rho(FactoredInt(15), 2) == 1);  // C_2 x C_4: one factor of full 2-part
  CHECK(rho(FactoredInt(21), 2) == 3);  // C_2 x C_6
  CHECK_THROWS_AS(rho(FactoredInt(5), 4), std::invalid_argument);
  CHECK_THROWS_AS(rho(FactoredInt(5), 3), std::invalid_argument);
  CHECK_THROWS_AS(rho(FactoredInt(5), 0), std::invalid_argument);
}

TEST_CASE("coefficient examples") {
  const CharacterGroup g{FactoredInt(5)};
  for (const auto& chi : g.characters()) {
    const auto c = coefficient(chi);
    if (chi.order == 1) CHECK(c.c == make_rational(1, 2));
    if (chi.order == 2) CHECK(c.c == make_rational(-1, 2));
    if (chi.order == 4) {
      CHECK(c.c == 0);
      CHECK(c.c_bar == 0);
    }
  }
}

TEST_CASE("coefficient table agrees with exact reduction") {
  for (u64 n = 1; n <= 120; ++n) {
    const CoefficientTable t{FactoredInt(n)};
    REQUIRE(t.max_rounding_gap() < 1e-6);
    for (std::size_t i = 0; i < t.characters().size(); ++i) REQUIRE(coefficient(t.characters()[i]).c == t.c(i));
  }
}

TEST_CASE("coefficient law on elementary characters") {
  // c(χ) = (R(n)/φ(n)) μ(h) / ρ_n(h) for elementary χ of order h, and 0 otherwise.
  for (u64 n = 1; n <= 1000; ++n) {
    const FactoredInt f(n);
    const CoefficientTable t(f);
    const BigRational density = make_rational(static_cast<long>(t.r_count()), static_cast<long>(t.group().phi()));
    for (std::size_t i = 0; i < t.characters().size(); ++i) {
      const auto& chi = t.characters()[i];
      if (!chi.is_elementary) {
        REQUIRE(t.c(i) == 0);
        continue;
      }
      const BigRational expected = density * mobius(chi.order) / BigRational(static_cast<unsigned long>(rho(f, chi.order)));
      REQUIRE(t.c(i) == expected);
      REQUIRE(abs(t.c(i)) <= BigRational(1, rho(f, chi.order)));
    }
  }
}

TEST_CASE("t expansion") {
  for (u64 n = 1; n <= 150; ++n) REQUIRE(verify_t_expansion(FactoredInt(n)));
  const auto r = check_t_expansion(FactoredInt(720));
  CHECK(r.exact_match);
  CHECK(r.max_residual < 1e-9);
}

TEST_CASE("principal plus non-principal part recovers t_a(n)") {
  for (u64 n = 1; n <= 80; ++n) {
    const FactoredInt f(n);
    const CoefficientTable t(f);
    const auto np = t.nonprincipal_part(n + 5);
    const OrderOracle oracle(f);
    for (u64 a = 1; a <= n + 5; ++a) {
      if (std::gcd(a, n) != 1) continue;
      const BigRational total = t.c(0) + np[a - 1];
      REQUIRE(total == (oracle.is_lambda_primitive_root(a) ? 1 : 0));
    }
  }
}

TEST_CASE("B(x, y) and the exact decomposition") {
  CHECK(b_sum(1, 17) == 0);
  CHECK(verify_decomposition(5, 5));
  CHECK(verify_decomposition(30, 7));
  CHECK(verify_decomposition(1, 1));
  CHECK(b_sum(40, 40, 1) == b_sum(40, 40, 4));
  CHECK_THROWS_AS(b_sum(kBSumLimit + 1, 1), std::out_of_range);
  CHECK_THROWS_AS(b_sum(0, 1), std::invalid_argument);
}

}

#include <doctest.h>

#include <boost/math/constants/constants.hpp>

#include <cmath>

#include "lroot/constants.hpp"

using namespace lroot;

namespace {

// Reference digits computed independently (mpmath, 60 digits).
const HighFloat kArtin("0.373955813619202288054728054346416415111629248606150");
const HighFloat kStephens("0.575959968892945439643163375492496692506513967176492");
const HighFloat kTheorem12("0.3413264366532749907727354563690698345626143769442");
const HighFloat kSecondMomentProduct("1.03169764567204370010202883362991142143547892852800");
const HighFloat kTheorem13("0.00369289415455845997302213455615504608547");

bool close(const HighFloat& a, const HighFloat& b, const char* tol) { return abs(a - b) < HighFloat(tol); }

}  // namespace

TEST_SUITE("constants") {

TEST_CASE("embedded pi and gamma match Boost") {
  using boost::math::constants::euler;
  using boost::math::constants::pi;
  CHECK(close(pi_50(), pi<HighFloat>(), "1e-48"));
  CHECK(close(euler_gamma_50(), euler<HighFloat>(), "1e-48"));
}

TEST_CASE("local factors") {
  CHECK(local_factor(LocalFactor::kArtin, 2) == make_rational(1, 2));
  CHECK(local_factor(LocalFactor::kStephens, 2) == make_rational(5, 7));
  CHECK(local_factor(LocalFactor::kSecondMoment, 2) == make_rational(37, 36));
  for (u64 p : primes_up_to(100)) {
    REQUIRE(local_factor(LocalFactor::kSecondMoment, p) == local_factor(LocalFactor::kSecondMomentFactored, p));
  }
}

TEST_CASE("accelerated products against reference digits") {
  const auto a = artin_constant(30);
  const auto s = stephens_constant(30);
  CHECK(close(a.value, kArtin, "1e-40"));
  CHECK(close(s.value, kStephens, "1e-40"));
  CHECK(a.decimal() == "0.373955813619202288054728054346");
  CHECK(s.decimal() == "0.575959968892945439643163375492");
  CHECK(a.error_bound < HighFloat("1e-30"));
  const auto p = evaluate_accelerated(LocalFactor::kSecondMoment, 1000, 30);
  CHECK(close(p.value, kSecondMomentProduct, "1e-40"));
  const auto pf = evaluate_accelerated(LocalFactor::kSecondMomentFactored, 500, 30);
  CHECK(close(pf.value, kSecondMomentProduct, "1e-40"));
}

TEST_CASE("theorem constants") {
  const auto t12 = theorem12_constant(6);
  CHECK(t12.decimal() == "0.341326");
  CHECK(close(theorem12_constant(30).value, kTheorem12, "1e-31"));
  const auto t13 = theorem13_constant(25);
  CHECK(close(t13.value, kTheorem13, "1e-40"));
  // The quoted 0.003692 is a truncation; the value rounds to 0.003693.
  CHECK(std::abs(t13.value.convert_to<double>() - 0.003692) < 1e-6);
  CHECK(theorem13_constant(6).decimal() == "0.003693");
}

TEST_CASE("digits validation") {
  CHECK_THROWS_AS(artin_constant(0), std::invalid_argument);
  CHECK_THROWS_AS(artin_constant(kMaxDigits + 1), std::invalid_argument);
  CHECK_THROWS_AS(evaluate_accelerated(LocalFactor::kArtin, 50, 10), std::invalid_argument);
  CHECK_THROWS_AS(euler_product_spec(LocalFactor::kArtin, 1), std::invalid_argument);
}

TEST_CASE("truncation brackets the limit") {
  for (auto f : {LocalFactor::kArtin, LocalFactor::kStephens, LocalFactor::kSecondMoment}) {
    const auto accel = evaluate_accelerated(f, 1000, 30);
    for (u64 cut : {100, 1000, 10000}) {
      const auto t = evaluate_truncated(euler_product_spec(f, cut));
      REQUIRE(abs(t.value - accel.value) <= t.error_bound);
    }
  }
  const auto t = evaluate_truncated(euler_product_spec(LocalFactor::kArtin, 10000));
  // 2/P = 2e-4 for the tail at P = 10^4 certifies four decimals.
  CHECK(t.digits == 4);
}

TEST_CASE("cutoff doubling moves values less than the error bound") {
  for (auto f : {LocalFactor::kArtin, LocalFactor::kStephens, LocalFactor::kSecondMoment}) {
    const auto a = evaluate_accelerated(f, 1000, 30);
    const auto b = evaluate_accelerated(f, 2000, 30);
    REQUIRE(abs(a.value - b.value) <= a.error_bound + b.error_bound);
  }
}

TEST_CASE("f(K) and rho1") {
  CHECK(f_of_K(4.18) == doctest::Approx(0.78369638703).epsilon(1e-10));
  CHECK(f_of_K(4.87) == doctest::Approx(0.72977437018).epsilon(1e-10));
  CHECK_THROWS_AS(f_of_K(0), std::domain_error);
  CHECK_THROWS_AS(f_of_K(-1), std::domain_error);
  const double r = rho1_root(1e-12);
  CHECK(std::abs(r - 3.419905700656601) < 1e-11);
  CHECK(std::abs(rho1_root(1e-7) - 3.4199057) < 1e-6);
  CHECK(f_of_K(3.419906) < 3.419906 / 4 + 1e-6);
  CHECK_THROWS_AS(rho1_root(1e-13), std::invalid_argument);
}

}

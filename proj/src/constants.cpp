#include "lroot/constants.hpp"

#include <boost/math/special_functions/zeta.hpp>

#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace lroot {

namespace {

using Series = std::vector<BigRational>;

// Numerator and denominator of the local factor as polynomials in u = 1/p,
// each with constant term 1.
std::pair<Series, Series> factor_polynomials(LocalFactor f) {
  auto q = [](std::initializer_list<long> cs) {
    Series s;
    for (long c : cs) s.emplace_back(c);
    return s;
  };
  switch (f) {
    case LocalFactor::kArtin:
      // (p^2 - p - 1) / (p^2 - p)
      return {q({1, -1, -1}), q({1, -1})};
    case LocalFactor::kStephens:
      // (p^3 - p - 1) / (p^3 - 1)
      return {q({1, 0, -1, -1}), q({1, 0, 0, -1})};
    case LocalFactor::kSecondMoment:
    case LocalFactor::kSecondMomentFactored:
      // (p^5 + p^4 - p^3 - p^2 + 1) / (p^5 + p^4 - p^3 - p^2); the factored
      // form has the same denominator (1 + u)^2 (1 - u) = 1 + u - u^2 - u^3.
      return {q({1, 1, -1, -1, 0, 1}), q({1, 1, -1, -1})};
  }
  throw std::logic_error("factor_polynomials: unknown factor");
}

// Coefficients l_1..l_terms of log P(u) for P(0) = 1, from k l_k = k p_k - Σ j l_j p_{k-j}.
Series log_series(const Series& poly, std::size_t terms) {
  Series p(terms + 1, BigRational(0));
  for (std::size_t i = 0; i < poly.size() && i <= terms; ++i) p[i] = poly[i];
  Series l(terms + 1, BigRational(0));
  for (std::size_t k = 1; k <= terms; ++k) {
    BigRational acc = BigRational(static_cast<long>(k)) * p[k];
    for (std::size_t j = 1; j < k; ++j) acc -= BigRational(static_cast<long>(j)) * l[j] * p[k - j];
    l[k] = acc / BigRational(static_cast<long>(k));
  }
  return l;
}

int mobius_small(u64 k) { return mobius(factorize(k)); }

HighFloat to_high(const BigRational& q) {
  return HighFloat(q.get_num().get_str()) / HighFloat(q.get_den().get_str());
}

// ζ(m) for integer m >= 2, cached.
HighFloat zeta_int(unsigned m) {
  static std::mutex mutex;
  static std::map<unsigned, HighFloat> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(m); it != cache.end()) return it->second;
  }
  HighFloat z;
  if (m > 170) {
    // 1 + 2^-m + 3^-m with |rest| < 2 * 4^-m, below working precision.
    z = 1 + pow(HighFloat(2), -static_cast<int>(m)) + pow(HighFloat(3), -static_cast<int>(m));
  } else {
    z = boost::math::zeta(HighFloat(m));
  }
  std::lock_guard lock(mutex);
  cache.emplace(m, z);
  return z;
}

constexpr double kTargetAbsError = 1e-45;
// Rounding allowance for a value assembled from a few hundred 50-digit operations.
const HighFloat kRoundingAllowance("1e-46");

HighFloat prime_zeta(unsigned s) {
  // P(s) = Σ_k μ(k)/k log ζ(ks); the terms beyond k are below 6 * 2^{-(k+1)s}.
  HighFloat sum = 0;
  for (unsigned k = 1;; ++k) {
    const int mu = mobius_small(k);
    if (mu != 0) sum += HighFloat(mu) / k * log(zeta_int(k * s));
    if (static_cast<double>((k + 1) * s) >= 180) break;
  }
  return sum;
}

HighFloat value_error(const HighFloat& value, const HighFloat& log_tail) {
  return abs(value) * (exp(log_tail) - 1);
}

int certified_digits(const HighFloat& err) {
  int d = 0;
  while (d < kMaxDigits && err < pow(HighFloat(10), -(d + 1))) ++d;
  return d;
}

void check_digits(int digits) {
  if (digits < 1 || digits > kMaxDigits) throw std::invalid_argument("digits must be in [1, 30]");
}

ConstantValue named(ConstantValue v, std::string name, int digits) {
  v.name = std::move(name);
  v.digits = digits;
  if (!(v.error_bound < pow(HighFloat(10), -digits))) {
    throw std::logic_error(v.name + ": error bound does not meet the requested digits");
  }
  return v;
}

}  // namespace

std::string to_string(LocalFactor f) {
  switch (f) {
    case LocalFactor::kArtin: return "artin";
    case LocalFactor::kStephens: return "stephens";
    case LocalFactor::kSecondMoment: return "second_moment";
    case LocalFactor::kSecondMomentFactored: return "second_moment_factored";
  }
  return "unknown";
}

BigRational local_factor(LocalFactor f, u64 p) {
  const BigRational pq(static_cast<unsigned long>(p));
  BigRational out;
  switch (f) {
    case LocalFactor::kArtin:
      out = 1 - 1 / (pq * (pq - 1));
      break;
    case LocalFactor::kStephens:
      out = 1 - pq / (pq * pq * pq - 1);
      break;
    case LocalFactor::kSecondMoment: {
      const BigRational p2 = pq * pq;
      out = 1 + 1 / (p2 * p2 * pq + p2 * p2 - p2 * pq - p2);
      break;
    }
    case LocalFactor::kSecondMomentFactored: {
      const BigRational inv = 1 / pq;
      const BigRational a = 1 + inv, b = 1 - inv;
      out = 1 + 1 / (a * a) * (inv * inv * inv * inv * inv) / b;
      break;
    }
  }
  out.canonicalize();
  return out;
}

EulerProductSpec euler_product_spec(LocalFactor f, u64 prime_cutoff) {
  if (prime_cutoff < 2) throw std::invalid_argument("euler_product_spec: cutoff must be at least 2");
  const HighFloat cut(prime_cutoff);
  EulerProductSpec spec{to_string(f), f, prime_cutoff, 0};
  switch (f) {
    case LocalFactor::kArtin:
    case LocalFactor::kStephens:
      // h(p) <= 1/(p(p-1)) <= 1/2, |log(1-h)| <= 2h, Σ_{n>P} 1/(n(n-1)) = 1/P.
      spec.tail_bound = 2 / cut;
      break;
    case LocalFactor::kSecondMoment:
    case LocalFactor::kSecondMomentFactored:
      // 0 < h(p) <= p^-5, log(1+h) <= h, Σ_{n>P} n^-5 <= 1/(4P^4).
      spec.tail_bound = 1 / (4 * pow(cut, 4));
      break;
  }
  return spec;
}

HighFloat truncated_product(const EulerProductSpec& spec) {
  HighFloat prod = 1;
  for (u64 p : primes_up_to(spec.prime_cutoff)) {
    const HighFloat hp(p);
    switch (spec.local_factor) {
      case LocalFactor::kArtin:
        prod *= 1 - 1 / (hp * (hp - 1));
        break;
      case LocalFactor::kStephens:
        prod *= 1 - hp / (hp * hp * hp - 1);
        break;
      case LocalFactor::kSecondMoment:
        prod *= 1 + 1 / (pow(hp, 5) + pow(hp, 4) - pow(hp, 3) - hp * hp);
        break;
      case LocalFactor::kSecondMomentFactored:
        prod *= 1 + 1 / ((1 + 1 / hp) * (1 + 1 / hp)) / pow(hp, 5) / (1 - 1 / hp);
        break;
    }
  }
  return prod;
}

std::string ConstantValue::decimal() const { return value.str(digits, std::ios_base::fixed); }

std::string ConstantValue::error_string() const { return error_bound.str(3, std::ios_base::scientific); }

ConstantValue evaluate_truncated(const EulerProductSpec& spec) {
  ConstantValue v;
  v.name = spec.name;
  v.value = truncated_product(spec);
  v.error_bound = value_error(v.value, spec.tail_bound) + kRoundingAllowance;
  v.digits = certified_digits(v.error_bound);
  return v;
}

ConstantValue evaluate_accelerated(LocalFactor f, u64 prime_cutoff, int digits) {
  check_digits(digits);
  if (prime_cutoff < 100) throw std::invalid_argument("evaluate_accelerated: cutoff must be at least 100");
  const double cut = static_cast<double>(prime_cutoff);
  // Series truncation: |a_s| <= ln2 * 2^s (Cauchy on |u| = 1/2), so the terms
  // with s > S contribute at most ln2 2^{S+1} P^{-S} / (S (1 - 2/P)).
  unsigned s_max = 2;
  auto remainder = [&](unsigned s) {
    return std::log(2.0) * std::pow(2.0, s + 1) * std::pow(cut, -static_cast<double>(s)) / (s * (1 - 2 / cut));
  };
  while (remainder(s_max) > kTargetAbsError) ++s_max;

  const auto [num, den] = factor_polynomials(f);
  const Series ln = log_series(num, s_max), ld = log_series(den, s_max);
  const auto primes = primes_up_to(prime_cutoff);

  HighFloat log_tail = 0;
  for (unsigned s = 1; s <= s_max; ++s) {
    const BigRational a = ln[s] - ld[s];
    if (a == 0) continue;
    if (s == 1) throw std::logic_error("evaluate_accelerated: local factor is not 1 + O(p^-2)");
    HighFloat head = 0;
    for (u64 p : primes) head += pow(HighFloat(p), -static_cast<int>(s));
    log_tail += to_high(a) * (prime_zeta(s) - head);
  }

  const EulerProductSpec spec = euler_product_spec(f, prime_cutoff);
  ConstantValue v;
  v.name = spec.name;
  v.value = truncated_product(spec) * exp(log_tail);
  v.error_bound = value_error(v.value, HighFloat(remainder(s_max))) + kRoundingAllowance;
  v.digits = digits;
  return v;
}

const HighFloat& pi_50() {
  // Digits of π, cross-checked against boost::math::constants::pi in the tests.
  static const HighFloat pi("3.14159265358979323846264338327950288419716939937510");
  return pi;
}

const HighFloat& euler_gamma_50() {
  // Euler-Mascheroni constant (OEIS A001620).
  static const HighFloat gamma("0.57721566490153286060651209008240243104215933593992");
  return gamma;
}

ConstantValue artin_constant(int digits) {
  return named(evaluate_accelerated(LocalFactor::kArtin, kDefaultCutoff, digits), "artin", digits);
}

ConstantValue stephens_constant(int digits) {
  return named(evaluate_accelerated(LocalFactor::kStephens, kDefaultCutoff, digits), "stephens", digits);
}

ConstantValue theorem12_constant(int digits) {
  check_digits(digits);
  const HighFloat& pi = pi_50();
  ConstantValue v{"theorem12", 6 / (pi * pi * exp(euler_gamma_50())), kRoundingAllowance, digits};
  return named(v, "theorem12", digits);
}

ConstantValue theorem13_constant(int digits) {
  check_digits(digits);
  const ConstantValue prod = evaluate_accelerated(LocalFactor::kSecondMoment, kDefaultCutoff, digits);
  const HighFloat& pi = pi_50();
  const HighFloat scale = 36 / (pow(pi, 4) * exp(2 * euler_gamma_50()));
  ConstantValue v{"theorem13", scale * (prod.value - 1), scale * prod.error_bound + kRoundingAllowance, digits};
  return named(v, "theorem13", digits);
}

double f_of_K(double k) {
  if (!(k > 0)) throw std::domain_error("f_of_K: K must be positive");
  return (std::log(k * k / 2 + 1) + 1) / k;
}

double rho1_root(double tolerance) {
  if (!(tolerance >= 1e-12)) throw std::invalid_argument("rho1_root: tolerance must be at least 1e-12");
  auto g = [](double k) { return k / 4 - f_of_K(k); };
  double lo = 1, hi = 10;
  if (!(g(lo) < 0 && g(hi) > 0)) throw std::logic_error("rho1_root: bracket does not change sign");
  while (hi - lo > tolerance) {
    const double mid = lo + (hi - lo) / 2;
    (g(mid) < 0 ? lo : hi) = mid;
  }
  return lo + (hi - lo) / 2;
}

}  // namespace lroot

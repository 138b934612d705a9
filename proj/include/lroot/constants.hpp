#pragma once

// High-precision evaluation of the fixed Euler products and related constants.

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <string>
#include <utility>

#include "lroot/arith.hpp"
#include "lroot/rational.hpp"

namespace lroot {

/// Working precision for every constant (50 significant decimal digits).
using HighFloat = boost::multiprecision::cpp_bin_float_50;

/// Most decimal digits any constant may be requested to.
inline constexpr int kMaxDigits = 30;

/// The per-prime factors this module knows how to multiply out.
enum class LocalFactor {
  kArtin,               // 1 - 1/(p(p-1))
  kStephens,            // 1 - p/(p^3 - 1)
  kSecondMoment,        // 1 + 1/(p^5 + p^4 - p^3 - p^2)
  kSecondMomentFactored // 1 + (1 + 1/p)^-2 p^-5 (1 - 1/p)^-1
};

std::string to_string(LocalFactor f);

/// Exact value of one local factor at p.
BigRational local_factor(LocalFactor f, u64 p);

/// A product over primes truncated at `prime_cutoff`, with a rigorous bound on
/// |log(∏_{p > cutoff} factor)| from elementary estimates.
struct EulerProductSpec {
  std::string name;
  LocalFactor local_factor;
  u64 prime_cutoff;
  HighFloat tail_bound;
};

EulerProductSpec euler_product_spec(LocalFactor f, u64 prime_cutoff);

/// ∏_{p <= cutoff} factor(p).
HighFloat truncated_product(const EulerProductSpec& spec);

struct ConstantValue {
  std::string name;
  HighFloat value;
  HighFloat error_bound;
  int digits;

  /// value rounded to `digits` decimals.
  std::string decimal() const;
  /// error_bound in scientific notation.
  std::string error_string() const;
};

/// Plain truncation: value = truncated product, error from the tail bound,
/// digits = how many decimals that error certifies.
ConstantValue evaluate_truncated(const EulerProductSpec& spec);

/// Truncated product times the tail ∏_{p > cutoff}, whose logarithm is
/// expanded as Σ_s a_s Σ_{p > cutoff} p^{-s} with the prime sums obtained
/// from log ζ by Möbius inversion.
ConstantValue evaluate_accelerated(LocalFactor f, u64 prime_cutoff, int digits);

/// Cutoff used by the named constants below.
inline constexpr u64 kDefaultCutoff = 1000;

ConstantValue artin_constant(int digits);
ConstantValue stephens_constant(int digits);
/// 6 / (π^2 e^γ).
ConstantValue theorem12_constant(int digits);
/// (36 / (π^4 e^{2γ})) (∏_p (1 + 1/(p^5 + p^4 - p^3 - p^2)) - 1).
ConstantValue theorem13_constant(int digits);

/// π and γ to 50 digits.
const HighFloat& pi_50();
const HighFloat& euler_gamma_50();

/// f(K) = (log(K^2/2 + 1) + 1) / K. Throws std::domain_error for K <= 0.
double f_of_K(double k);

/// Positive root of K/4 = f(K) by bisection. Throws std::invalid_argument
/// for tolerance < 1e-12.
double rho1_root(double tolerance);

}  // namespace lroot

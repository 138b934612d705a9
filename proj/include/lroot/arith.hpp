#pragma once

// Factorization and the multiplicative functions built on it.

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lroot {

using u64 = std::uint64_t;
using i64 = std::int64_t;

/// Largest argument accepted by factorize().
inline constexpr u64 kMaxFactorizable = u64{1} << 63;

struct PrimePower {
  u64 prime;
  int exponent;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// A positive integer together with its prime-power factorization.
///
/// Primes are strictly increasing and every exponent is at least one; the
/// value 1 carries an empty factor list. Instances are immutable once built.
class FactoredInt {
 public:
  FactoredInt() = default;

  /// Factors `n`. Throws std::invalid_argument for n == 0 or n > 2^63.
  explicit FactoredInt(u64 n);

  /// Builds from an existing factorization, validating every invariant.
  static FactoredInt from_factors(std::vector<PrimePower> factors);

  u64 value() const { return value_; }
  std::span<const PrimePower> factors() const { return factors_; }
  bool is_one() const { return factors_.empty(); }

  friend bool operator==(const FactoredInt&, const FactoredInt&) = default;

 private:
  friend class FactorSieve;
  FactoredInt(u64 value, std::vector<PrimePower> factors)
      : value_(value), factors_(std::move(factors)) {}

  u64 value_ = 1;
  std::vector<PrimePower> factors_;
};

FactoredInt factorize(u64 n);

// Modular arithmetic on 64-bit operands (128-bit intermediates).
u64 mul_mod(u64 a, u64 b, u64 m);
u64 pow_mod(u64 base, u64 exp, u64 m);

/// Deterministic Miller-Rabin, valid on the full 64-bit range.
bool is_prime(u64 n);

u64 gcd(u64 a, u64 b);
u64 lcm(u64 a, u64 b);

u64 euler_phi(const FactoredInt& n);
u64 carmichael_lambda(const FactoredInt& n);
u64 rad(const FactoredInt& n);
int mobius(const FactoredInt& n);
int omega(const FactoredInt& n);
u64 tau(const FactoredInt& n);

inline u64 euler_phi(u64 n) { return euler_phi(factorize(n)); }
inline u64 carmichael_lambda(u64 n) { return carmichael_lambda(factorize(n)); }
inline u64 rad(u64 n) { return rad(factorize(n)); }
inline int mobius(u64 n) { return mobius(factorize(n)); }
inline int omega(u64 n) { return omega(factorize(n)); }
inline u64 tau(u64 n) { return tau(factorize(n)); }

/// λ for a single prime power p^e.
u64 carmichael_lambda_prime_power(u64 p, int e);

/// p-adic valuation of m (m > 0).
int valuation(u64 m, u64 p);

/// Order of `a` modulo `n`: strips prime factors of λ(n) while a^t stays 1.
/// Throws std::invalid_argument if gcd(a, n) > 1.
u64 multiplicative_order(u64 a, const FactoredInt& n);
inline u64 multiplicative_order(u64 a, u64 n) { return multiplicative_order(a, factorize(n)); }

/// φ, λ, rad, ω, μ of one modulus, computed from a single factorization.
struct MultiplicativeProfile {
  FactoredInt n;
  u64 phi;
  u64 lambda;
  u64 rad;
  int omega;
  int mu;
};

MultiplicativeProfile profile(const FactoredInt& n);

/// Smallest-prime-factor sieve over [1, limit]. Factors every n in range in
/// O(log n) without trial division.
class FactorSieve {
 public:
  explicit FactorSieve(u64 limit);

  u64 limit() const { return limit_; }
  FactoredInt factor(u64 n) const;
  /// All primes up to the limit, ascending.
  const std::vector<std::uint32_t>& primes() const { return primes_; }

 private:
  u64 limit_;
  std::vector<std::uint32_t> spf_;
  std::vector<std::uint32_t> primes_;
};

/// Euler φ of every n in [0, limit] (entry 0 unused).
std::vector<u64> phi_table(u64 limit);

/// Primes up to `limit`, ascending (plain Eratosthenes).
std::vector<u64> primes_up_to(u64 limit);

}  // namespace lroot

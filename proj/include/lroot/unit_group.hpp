#pragma once

// Structure of the unit group (Z/nZ)* and the count of λ-primitive roots.

#include <map>
#include <optional>
#include <vector>

#include "lroot/arith.hpp"

namespace lroot {

/// Cyclic decomposition of (Z/nZ)* taken prime power by prime power.
///
/// For an odd p^e the factor is C_{λ(p^e)}; 2 contributes nothing, 4 gives
/// C_2, and 2^e with e >= 3 gives C_2 x C_{2^(e-2)}. `delta[q]` counts the
/// factors whose q-part is as large as the q-part of λ(n).
struct UnitGroupStructure {
  FactoredInt n;
  std::vector<u64> cyclic_orders;
  u64 phi = 1;
  u64 lambda = 1;
  std::map<u64, int> delta;
};

UnitGroupStructure decompose(const FactoredInt& n);

/// Closed-form R(n) = φ(n) ∏_{q | φ(n)} (1 - q^{-Δ_q(n)}), in integer arithmetic.
u64 r_count(const UnitGroupStructure& g);
inline u64 r_count(const FactoredInt& n) { return r_count(decompose(n)); }

/// Largest modulus accepted by the enumeration oracles.
inline constexpr u64 kBruteForceLimit = 1'000'000;

/// R(n) by enumerating units and computing each multiplicative order.
/// Throws std::out_of_range above kBruteForceLimit.
u64 r_count_bruteforce(const FactoredInt& n);

struct LambdaRootCount {
  FactoredInt n;
  u64 r_closed = 0;
  std::optional<u64> r_brute;
};

/// Closed form always; brute force as well when `with_bruteforce` is set.
LambdaRootCount lambda_root_count(const FactoredInt& n, bool with_bruteforce);

/// Precomputed λ(n) and its prime divisors for repeated order queries mod n.
class OrderOracle {
 public:
  explicit OrderOracle(const FactoredInt& n);
  /// Skips refactoring λ(n) when the caller already has it.
  OrderOracle(const FactoredInt& n, const FactoredInt& lambda);

  u64 modulus() const { return n_; }
  u64 lambda() const { return lambda_; }

  /// Order of a mod n. Requires gcd(a, n) = 1 (unchecked).
  u64 order(u64 a) const;

  /// t_a(n): gcd(a, n) = 1 and no a^{λ/q} collapses to 1.
  bool is_lambda_primitive_root(u64 a) const;

 private:
  u64 n_;
  u64 lambda_;
  std::vector<PrimePower> lambda_factors_;
};

bool is_lambda_primitive_root(u64 a, const FactoredInt& n);

/// λ(n) / rad(λ(n)): the exponent cutting out E(n).
u64 e_subgroup_exponent(const FactoredInt& n);

/// a ∈ E(n). Throws std::invalid_argument when gcd(a, n) > 1.
bool e_membership(u64 a, const FactoredInt& n);

}  // namespace lroot

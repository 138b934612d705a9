#pragma once

// Dirichlet characters mod n at desk scale: the full character group,
// elementary characters, ρ_n(h), the coefficients c(χ), and exact checks of
// the character expansion of t_a(n).

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "lroot/arith.hpp"
#include "lroot/rational.hpp"
#include "lroot/unit_group.hpp"

namespace lroot {

/// Largest modulus for which the character group is built explicitly.
inline constexpr u64 kCharacterLimit = 5000;
/// Bound on both x and y for b_sum / verify_decomposition.
inline constexpr u64 kBSumLimit = 500;

/// χ(g_i) = exp(2πi · exponents[i] / m_i) against the generators g_i of the
/// cyclic factors (orders m_i) of the unit group.
struct Character {
  FactoredInt modulus;
  std::vector<u64> exponents;
  u64 order = 1;
  bool is_elementary = true;
};

struct CharacterCoefficient {
  Character chi;
  BigRational c;
  BigRational c_bar;
};

/// Explicit generators and discrete-log tables for (Z/nZ)*, n <= kCharacterLimit.
///
/// Cyclic factors follow decompose(): one per odd prime power (generated by
/// the least primitive root), C_2 for 4 (generated by -1), and C_2 x C_{2^(e-2)}
/// for 2^e, e >= 3 (generated by -1 and 5). Component generators are lifted to
/// mod n by CRT.
class CharacterGroup {
 public:
  explicit CharacterGroup(const FactoredInt& n);

  const FactoredInt& modulus() const { return n_; }
  const UnitGroupStructure& structure() const { return structure_; }
  std::span<const u64> factor_orders() const { return structure_.cyclic_orders; }
  std::span<const u64> generators() const { return generators_; }
  u64 lambda() const { return structure_.lambda; }
  u64 phi() const { return structure_.phi; }
  std::size_t rank() const { return structure_.cyclic_orders.size(); }

  bool is_unit(u64 a) const;
  /// Exponent vector of a unit against generators(); a is reduced mod n.
  std::span<const std::int32_t> dlog(u64 a) const;

  /// j with χ(a) = ζ_λ^j, λ = λ(n). Requires a to be a unit.
  u64 value_index(const Character& chi, u64 a) const;

  Character make_character(std::vector<u64> exponents) const;
  /// All φ(n) characters in mixed-radix order; the principal one first.
  std::vector<Character> characters() const;
  /// Position of chi in characters().
  std::size_t index_of(std::span<const u64> exponents) const;

  /// E(n) by brute force: units a with a^{λ/rad(λ)} = 1.
  std::vector<u64> e_subgroup() const;
  /// χ trivial on every element of `e_elements`.
  bool trivial_on(const Character& chi, std::span<const u64> e_elements) const;

  /// λ-primitive roots in [1, n], ascending.
  std::vector<u64> lambda_primitive_roots() const;

 private:
  FactoredInt n_;
  UnitGroupStructure structure_;
  std::vector<u64> generators_;
  std::vector<std::int32_t> dlog_;  // n * rank entries; -1 marks non-units
  u64 e_exponent_ = 1;
};

/// ρ_n(h) = ∏_{q | h} (q^{Δ_q(n)} - 1). h must be squarefree with prime
/// support inside that of λ(n); std::invalid_argument otherwise.
u64 rho(const FactoredInt& n, u64 h);

/// c(χ) from its defining average over λ-primitive roots, reduced exactly in
/// Z[ζ_ord(χ)]; c̄(χ) from the closed form. Throws std::logic_error if the
/// defining sum is not rational.
CharacterCoefficient coefficient(const Character& chi);

/// Every coefficient sum s(χ) = Σ' χ(b) = φ(n) c(χ) for one modulus, with each
/// value certified as an exact integer.
///
/// The sums are evaluated in floating point and certified through Galois
/// conjugation: s(χ^t) is the conjugate of s(χ) under ζ -> ζ^t, so when every
/// conjugate lies within 1/4 of the same integer r, s(χ) - r is an algebraic
/// integer whose norm has modulus below 1, hence zero.
class CoefficientTable {
 public:
  explicit CoefficientTable(const FactoredInt& n);

  const CharacterGroup& group() const { return group_; }
  const std::vector<Character>& characters() const { return chars_; }
  /// s(χ) for characters()[i].
  std::int64_t sum(std::size_t i) const { return sums_[i]; }
  BigRational c(std::size_t i) const;
  u64 r_count() const { return roots_.size(); }
  const std::vector<u64>& roots() const { return roots_; }
  /// Largest |numeric s(χ) - s(χ)| seen during certification.
  double max_rounding_gap() const { return max_gap_; }

  /// Σ_{χ ∈ X(n)} c(χ) χ(a) for a = 1..y, X(n) the non-principal elementary
  /// characters; exact, via reduction in Z[ζ_rad(λ)].
  std::vector<BigRational> nonprincipal_part(u64 y) const;

 private:
  CharacterGroup group_;
  std::vector<Character> chars_;
  std::vector<u64> roots_;
  std::vector<std::int64_t> sums_;
  double max_gap_ = 0;
};

struct TExpansionResult {
  bool exact_match = true;
  double max_residual = 0;  // floating |Σ c(χ)χ(a) - t_a(n)|
};

TExpansionResult check_t_expansion(const FactoredInt& n);

/// t_a(n) = Σ_χ c(χ) χ(a) for every unit a, exactly and within 1e-9 numerically.
bool verify_t_expansion(const FactoredInt& n);

/// B(x, y) = Σ_{n <= x} Σ_{χ ∈ X(n)} c(χ) Σ_{a <= y} χ(a), exact.
BigRational b_sum(u64 x, u64 y);
BigRational b_sum(u64 x, u64 y, unsigned workers);

struct DecompositionParts {
  BigRational lhs;        // Σ_{a<=y} N_a(x), by enumeration
  BigRational principal;  // Σ_{n<=x} (R(n)/φ(n)) #{a <= y : (a, n) = 1}
  BigRational b;          // B(x, y)
};

DecompositionParts decomposition_parts(u64 x, u64 y, unsigned workers);

/// Σ_{a<=y} N_a(x) == principal + B(x, y) as exact rationals.
bool verify_decomposition(u64 x, u64 y);
bool verify_decomposition(u64 x, u64 y, unsigned workers);

}  // namespace lroot

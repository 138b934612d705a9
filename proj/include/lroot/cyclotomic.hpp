#pragma once

// Exact arithmetic in Z[ζ_m] for deciding when a sum of m-th roots of unity
// is a rational integer.

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace lroot {

/// Coefficients of Φ_m, constant term first.
std::vector<std::int64_t> cyclotomic_polynomial(std::uint64_t m);

/// Reduces integer combinations Σ c_j ζ_m^j modulo Φ_m.
class CyclotomicReducer {
 public:
  explicit CyclotomicReducer(std::uint64_t m);

  std::uint64_t order() const { return m_; }

  /// `coeffs[j]` multiplies ζ_m^j; size must equal m. Returns the value when
  /// it is a rational integer, nullopt otherwise.
  std::optional<std::int64_t> as_integer(std::span<const std::int64_t> coeffs) const;

  /// Floating evaluation of the same combination, for residual diagnostics.
  std::complex<long double> evaluate(std::span<const std::int64_t> coeffs) const;

 private:
  std::uint64_t m_;
  std::vector<std::int64_t> phi_;
};

}  // namespace lroot

#include "lroot/cyclotomic.hpp"

#include <numbers>
#include <stdexcept>

namespace lroot {

namespace {

using Poly = std::vector<std::int64_t>;

Poly times_xd_minus_one(const Poly& p, std::uint64_t d) {
  Poly out(p.size() + d, 0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    out[i + d] += p[i];
    out[i] -= p[i];
  }
  return out;
}

// Exact division by x^d - 1; the caller guarantees divisibility.
Poly divide_xd_minus_one(const Poly& p, std::uint64_t d) {
  // p = q (x^d - 1)  =>  q[i] = q[i - d] - p[i], solved from the bottom.
  Poly q(p.size() - d, 0);
  for (std::size_t i = 0; i < q.size(); ++i) {
    q[i] = -p[i] + (i >= d ? q[i - d] : 0);
  }
  return q;
}

int mobius_small(std::uint64_t n) {
  int mu = 1;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    mu = -mu;
  }
  if (n > 1) mu = -mu;
  return mu;
}

}  // namespace

std::vector<std::int64_t> cyclotomic_polynomial(std::uint64_t m) {
  if (m == 0) throw std::invalid_argument("cyclotomic_polynomial: m must be positive");
  Poly p{1};
  std::vector<std::uint64_t> down;
  for (std::uint64_t d = 1; d <= m; ++d) {
    if (m % d) continue;
    const int mu = mobius_small(m / d);
    if (mu == 1) p = times_xd_minus_one(p, d);
    if (mu == -1) down.push_back(d);
  }
  for (std::uint64_t d : down) p = divide_xd_minus_one(p, d);
  return p;
}

CyclotomicReducer::CyclotomicReducer(std::uint64_t m) : m_(m), phi_(cyclotomic_polynomial(m)) {}

std::optional<std::int64_t> CyclotomicReducer::as_integer(std::span<const std::int64_t> coeffs) const {
  if (coeffs.size() != m_) throw std::invalid_argument("CyclotomicReducer: coefficient count must equal m");
  std::vector<std::int64_t> c(coeffs.begin(), coeffs.end());
  const std::size_t deg = phi_.size() - 1;
  for (std::size_t k = c.size(); k-- > deg;) {
    const std::int64_t lead = c[k];
    if (lead == 0) continue;
    for (std::size_t j = 0; j <= deg; ++j) c[k - deg + j] -= lead * phi_[j];
  }
  for (std::size_t j = 1; j < deg && j < c.size(); ++j) {
    if (c[j] != 0) return std::nullopt;
  }
  return c[0];
}

std::complex<long double> CyclotomicReducer::evaluate(std::span<const std::int64_t> coeffs) const {
  std::complex<long double> sum = 0;
  const long double step = 2 * std::numbers::pi_v<long double> / static_cast<long double>(m_);
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    if (coeffs[j] == 0) continue;
    sum += static_cast<long double>(coeffs[j]) * std::polar(1.0L, step * static_cast<long double>(j));
  }
  return sum;
}

}  // namespace lroot

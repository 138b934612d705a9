#pragma once

// Counting functions N_a(x), P_a(x) and the exact first/second moment sums
// built from them.

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "lroot/arith.hpp"
#include "lroot/rational.hpp"

namespace lroot {

/// Thrown when a sweep would exceed its element-order evaluation budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Maximum x * y element-order evaluations for a second-moment sweep.
inline constexpr u64 kSweepBudget = 100'000'000;
/// Upper bound on x for the direct Σ₁ double sum (and the gcd form).
inline constexpr u64 kSigma1Limit = 2000;
/// Upper bound on x for φ(φ(n)) tables.
inline constexpr u64 kPhiPhiLimit = 10'000'000;
/// Upper bound on x and y for the exact second-moment split.
inline constexpr u64 kSplitLimit = 100;

struct MomentConfig {
  u64 x = 1;
  u64 y = 1;
  bool include_n_equals_1 = true;
};

/// Exact results for one (x, y) point plus floating diagnostics.
///
/// `ratios` holds values scaled by powers of log log log x; it is left empty
/// for x < 16, where log log x <= 1.
struct SweepReport {
  MomentConfig config;
  BigRational mean;
  BigRational second_moment;
  BigRational sigma1;
  u64 phi_phi_sum = 0;
  std::map<std::string, double> ratios;
};

/// N_a(x): moduli n <= x for which a is a λ-primitive root. n = 1 always
/// counts and n = 2 counts for odd a.
u64 n_count(u64 a, u64 x);

/// P_a(x): primes p <= x, p ∤ a, with ord_p(a) = p - 1.
u64 p_count(u64 a, u64 x);

/// N_a(x) for every a in [1, y], sharded over n.
std::vector<u64> n_counts(const MomentConfig& config, unsigned workers);

/// Σ_{n<=x} R(n)/n.
BigRational mean_sum(u64 x);
BigRational mean_sum(const MomentConfig& config);

/// (1/y) Σ_{a<=y} (N_a(x) - Σ_{n<=x} R(n)/n)^2. Throws BudgetExceeded when
/// x * y > kSweepBudget.
BigRational second_moment(const MomentConfig& config);
BigRational second_moment(const MomentConfig& config, unsigned workers);

/// Σ_{n1,n2<=x} R(n1)R(n2)/(n1 n2) · ((n1,n2)/φ((n1,n2)) - 1).
BigRational sigma1_direct(u64 x);
BigRational sigma1_direct(u64 x, unsigned workers);

/// The same sum regrouped by d = (n1, n2) over coprime cofactors k1, k2.
BigRational sigma1_gcd_form(u64 x);
BigRational sigma1_gcd_form(u64 x, unsigned workers);

/// Σ_{n<=x} φ(φ(n)).
u64 phi_phi_sum(u64 x);

/// Σ_{n<=x} φ(φ(n))/n, the lower-bound companion of mean_sum.
BigRational phi_phi_mean(u64 x);

/// (1/d) ∏_{p | d} 1/(1 + 1/p).
BigRational corollary_density(const FactoredInt& d);

/// Every term of the second-moment expansion evaluated exactly.
///
/// lhs is y times the second moment by direct enumeration. y_sigma1 is
/// y·Σ₁, sigma2 collects all cross terms with a non-principal character
/// (through the character tables), and e_exact is what the principal
/// characters leave over once #{a <= y : (a, n1 n2) = 1} is replaced by
/// y φ(n1 n2)/(n1 n2).
struct SecondMomentSplit {
  BigRational lhs;
  BigRational y_sigma1;
  BigRational sigma2;
  BigRational e_exact;
};

/// Requires x, y <= kSplitLimit.
SecondMomentSplit second_moment_split(u64 x, u64 y);

/// Mean, second moment, Σ₁ and Σφ(φ(n)) for one configuration. Σ₁ is the
/// direct double sum, so x is limited to kSigma1Limit.
SweepReport sweep_report(const MomentConfig& config, unsigned workers);

/// log log log x, defined only for x >= 16.
double logloglog(double x);

}  // namespace lroot

#include "lroot/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lroot/characters.hpp"
#include "lroot/parallel.hpp"
#include "lroot/unit_group.hpp"

namespace lroot {

namespace {

constexpr u64 kCountLimit = 10'000'000;
constexpr std::size_t kShards = 64;

// R(n), φ(n) and an order oracle for every n in [1, x].
struct ModulusTable {
  std::vector<u64> r;
  std::vector<u64> phi;
  std::vector<OrderOracle> oracle;

  explicit ModulusTable(u64 x) : r(x + 1), phi(x + 1) {
    const FactorSieve sieve(x);
    oracle.reserve(x);
    for (u64 n = 1; n <= x; ++n) {
      const FactoredInt nf = sieve.factor(n);
      const UnitGroupStructure g = decompose(nf);
      r[n] = r_count(g);
      phi[n] = g.phi;
      oracle.emplace_back(nf, sieve.factor(g.lambda));
    }
  }

  const OrderOracle& at(u64 n) const { return oracle[n - 1]; }
};

void check_count_range(u64 x, const char* what) {
  if (x == 0) throw std::invalid_argument(std::string(what) + ": x must be positive");
  if (x > kCountLimit) throw std::out_of_range(std::string(what) + ": x above sieve bound");
}

BigRational ratio(u64 num, u64 den) {
  BigRational q(num, den);
  q.canonicalize();
  return q;
}

}  // namespace

u64 n_count(u64 a, u64 x) {
  check_count_range(x, "n_count");
  const FactorSieve sieve(x);
  u64 count = 0;
  for (u64 n = 1; n <= x; ++n) {
    const FactoredInt nf = sieve.factor(n);
    if (OrderOracle(nf, sieve.factor(carmichael_lambda(nf))).is_lambda_primitive_root(a)) ++count;
  }
  return count;
}

u64 p_count(u64 a, u64 x) {
  check_count_range(x, "p_count");
  const FactorSieve sieve(x);
  u64 count = 0;
  for (u64 p : sieve.primes()) {
    if (a % p == 0) continue;
    // For a prime modulus λ(p) = p - 1, so λ-primitive means primitive.
    if (OrderOracle(sieve.factor(p), sieve.factor(p == 2 ? 1 : p - 1)).is_lambda_primitive_root(a)) ++count;
  }
  return count;
}

std::vector<u64> n_counts(const MomentConfig& config, unsigned workers) {
  const u64 x = config.x, y = config.y;
  if (x == 0 || y == 0) throw std::invalid_argument("n_counts: x and y must be positive");
  if (x > kSweepBudget / y) throw BudgetExceeded("n_counts: x*y exceeds the sweep budget");
  const ModulusTable table(x);
  const u64 first = config.include_n_equals_1 ? 1 : 2;
  const std::size_t shards = std::min<std::size_t>(kShards, x);
  auto partial = parallel_map(shards, workers, [&](std::size_t s) {
    std::vector<u64> counts(y, 0);
    std::vector<char> hit;
    for (u64 n = first + s; n <= x; n += shards) {
      const OrderOracle& oracle = table.at(n);
      const u64 span = std::min(n, y + 1);
      hit.assign(span, 0);
      for (u64 r = 0; r < span; ++r) hit[r] = oracle.is_lambda_primitive_root(r) ? 1 : 0;
      // span = min(n, y + 1) covers a mod n for every a <= y.
      for (u64 a = 1; a <= y; ++a) counts[a - 1] += hit[a % n];
    }
    return counts;
  });
  std::vector<u64> total(y, 0);
  for (const auto& part : partial) {
    for (u64 i = 0; i < y; ++i) total[i] += part[i];
  }
  return total;
}

BigRational mean_sum(const MomentConfig& config) {
  check_count_range(config.x, "mean_sum");
  const FactorSieve sieve(config.x);
  std::vector<BigRational> terms;
  terms.reserve(config.x);
  for (u64 n = config.include_n_equals_1 ? 1 : 2; n <= config.x; ++n) {
    terms.push_back(ratio(r_count(sieve.factor(n)), n));
  }
  return sum_pairwise(std::move(terms));
}

BigRational mean_sum(u64 x) { return mean_sum(MomentConfig{x, 1, true}); }

BigRational second_moment(const MomentConfig& config, unsigned workers) {
  const auto counts = n_counts(config, workers);
  const BigRational mean = mean_sum(config);
  BigInt s1 = 0, s2 = 0;
  for (u64 c : counts) {
    s1 += c;
    s2 += BigInt(c) * c;
  }
  const BigInt y = BigInt(static_cast<unsigned long>(config.y));
  BigRational total = BigRational(s2) - 2 * mean * BigRational(s1) + BigRational(y) * mean * mean;
  total /= BigRational(y);
  total.canonicalize();
  return total;
}

BigRational second_moment(const MomentConfig& config) { return second_moment(config, default_workers()); }

BigRational sigma1_direct(u64 x) { return sigma1_direct(x, default_workers()); }

BigRational sigma1_direct(u64 x, unsigned workers) {
  if (x == 0) throw std::invalid_argument("sigma1_direct: x must be positive");
  if (x > kSigma1Limit) throw std::out_of_range("sigma1_direct: x above bound");
  const ModulusTable table(x);
  auto rows = parallel_map(x, workers, [&](std::size_t i) -> BigRational {
    const u64 n1 = i + 1;
    std::vector<BigRational> terms;
    for (u64 n2 = n1; n2 <= x; ++n2) {
      const u64 g = std::gcd(n1, n2);
      if (g == 1) continue;
      // (g/φ(g) - 1) = (g - φ(g))/φ(g); off-diagonal pairs count twice.
      const u64 weight = n2 == n1 ? 1 : 2;
      BigRational t(BigInt(table.r[n2]) * weight * (g - table.phi[g]), BigInt(n2) * table.phi[g]);
      t.canonicalize();
      terms.push_back(std::move(t));
    }
    return sum_pairwise(std::move(terms)) * ratio(table.r[n1], n1);
  });
  return sum_pairwise(std::move(rows));
}

BigRational sigma1_gcd_form(u64 x) { return sigma1_gcd_form(x, default_workers()); }

BigRational sigma1_gcd_form(u64 x, unsigned workers) {
  if (x == 0) throw std::invalid_argument("sigma1_gcd_form: x must be positive");
  if (x > kSigma1Limit) throw std::out_of_range("sigma1_gcd_form: x above bound");
  const ModulusTable table(x);
  auto by_d = parallel_map(x, workers, [&](std::size_t i) -> BigRational {
    const u64 d = i + 1;
    const u64 phi_d = table.phi[d];
    // 1/(dφ(d)) - 1/d^2 vanishes at d = 1.
    if (d == phi_d) return BigRational(0);
    const u64 m = x / d;
    std::vector<BigRational> outer;
    for (u64 k1 = 1; k1 <= m; ++k1) {
      std::vector<BigRational> inner;
      for (u64 k2 = 1; k2 <= m; ++k2) {
        if (std::gcd(k1, k2) == 1) inner.push_back(ratio(table.r[d * k2], k2));
      }
      outer.push_back(sum_pairwise(std::move(inner)) * ratio(table.r[d * k1], k1));
    }
    BigRational factor(BigInt(d - phi_d), BigInt(d) * d * phi_d);
    factor.canonicalize();
    return sum_pairwise(std::move(outer)) * factor;
  });
  return sum_pairwise(std::move(by_d));
}

u64 phi_phi_sum(u64 x) {
  if (x == 0) throw std::invalid_argument("phi_phi_sum: x must be positive");
  if (x > kPhiPhiLimit) throw std::out_of_range("phi_phi_sum: x above bound");
  const auto phi = phi_table(x);
  u64 s = 0;
  for (u64 n = 1; n <= x; ++n) s += phi[phi[n]];
  return s;
}

BigRational phi_phi_mean(u64 x) {
  if (x == 0) throw std::invalid_argument("phi_phi_mean: x must be positive");
  if (x > kPhiPhiLimit) throw std::out_of_range("phi_phi_mean: x above bound");
  const auto phi = phi_table(x);
  std::vector<BigRational> terms;
  terms.reserve(x);
  for (u64 n = 1; n <= x; ++n) terms.push_back(ratio(phi[phi[n]], n));
  return sum_pairwise(std::move(terms));
}

BigRational corollary_density(const FactoredInt& d) {
  BigRational out(1, d.value());
  for (const auto& pp : d.factors()) out *= BigRational(pp.prime, pp.prime + 1);
  out.canonicalize();
  return out;
}

SecondMomentSplit second_moment_split(u64 x, u64 y) {
  if (x == 0 || y == 0) throw std::invalid_argument("second_moment_split: x and y must be positive");
  if (x > kSplitLimit || y > kSplitLimit) throw std::out_of_range("second_moment_split: x or y above bound");
  const ModulusTable table(x);
  const MomentConfig config{x, y, true};
  const BigRational mean = mean_sum(config);
  const BigRational yq(static_cast<unsigned long>(y));

  SecondMomentSplit out;
  out.lhs = 0;
  for (u64 c : n_counts(config, 1)) {
    const BigRational diff = BigRational(static_cast<unsigned long>(c)) - mean;
    out.lhs += diff * diff;
  }
  out.y_sigma1 = yq * sigma1_direct(x, 1);

  // Per-a principal (U) and non-principal (T) parts of Σ_n t_a(n).
  std::vector<BigRational> u(y, BigRational(0)), t(y, BigRational(0));
  for (u64 n = 1; n <= x; ++n) {
    const BigRational density = ratio(table.r[n], table.phi[n]);
    const auto np = CoefficientTable(FactoredInt(n)).nonprincipal_part(y);
    for (u64 a = 1; a <= y; ++a) {
      if (std::gcd(a, n) == 1) u[a - 1] += density;
      t[a - 1] += np[a - 1];
    }
  }
  BigRational principal_exact = 0, count_via_characters = 0;
  out.sigma2 = 0;
  for (u64 i = 0; i < y; ++i) {
    out.sigma2 += 2 * u[i] * t[i] + t[i] * t[i];
    principal_exact += u[i] * u[i];
    count_via_characters += u[i] + t[i];
  }
  BigRational principal_smoothed = 0;
  for (u64 n1 = 1; n1 <= x; ++n1) {
    for (u64 n2 = 1; n2 <= x; ++n2) {
      const u64 phi12 = euler_phi(n1 * n2);
      BigRational term(BigInt(table.r[n1]) * table.r[n2] * phi12, BigInt(table.phi[n1]) * table.phi[n2] * n1 * n2);
      term.canonicalize();
      principal_smoothed += term;
    }
  }
  principal_smoothed *= yq;
  out.e_exact = (principal_exact - principal_smoothed) - 2 * mean * (count_via_characters - yq * mean);
  return out;
}

double logloglog(double x) {
  if (x < 16) throw std::domain_error("logloglog: defined here only for x >= 16");
  return std::log(std::log(std::log(x)));
}

SweepReport sweep_report(const MomentConfig& config, unsigned workers) {
  SweepReport rep;
  rep.config = config;
  rep.mean = mean_sum(config);
  rep.second_moment = second_moment(config, workers);
  rep.sigma1 = sigma1_direct(config.x, workers);
  rep.phi_phi_sum = phi_phi_sum(config.x);
  if (config.x >= 16) {
    const double x = static_cast<double>(config.x);
    const double l = logloglog(x);
    rep.ratios["mean_scaled"] = rep.mean.get_d() * l / x;
    rep.ratios["m2_scaled"] = rep.second_moment.get_d() * l * l / (x * x);
    rep.ratios["sigma1_scaled"] = rep.sigma1.get_d() * l * l / (x * x);
    rep.ratios["phi_phi_scaled"] = static_cast<double>(rep.phi_phi_sum) * l / (x * x);
  }
  return rep;
}

}  // namespace lroot

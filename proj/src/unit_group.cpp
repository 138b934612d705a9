#include "lroot/unit_group.hpp"

#include <cassert>
#include <numeric>
#include <stdexcept>

namespace lroot {

UnitGroupStructure decompose(const FactoredInt& n) {
  UnitGroupStructure g;
  g.n = n;
  for (const auto& [p, e] : n.factors()) {
    if (p == 2) {
      if (e == 2) g.cyclic_orders.push_back(2);
      if (e >= 3) {
        g.cyclic_orders.push_back(2);
        g.cyclic_orders.push_back(u64{1} << (e - 2));
      }
    } else {
      g.cyclic_orders.push_back(carmichael_lambda_prime_power(p, e));
    }
  }
  for (u64 m : g.cyclic_orders) {
    g.phi *= m;
    g.lambda = std::lcm(g.lambda, m);
  }
  const FactoredInt phi_f(g.phi);
  for (const auto& pp : phi_f.factors()) {
    const u64 q = pp.prime;
    const int top = valuation(g.lambda, q);
    // λ and φ have the same prime support.
    assert(top >= 1);
    int count = 0;
    for (u64 m : g.cyclic_orders) {
      if (valuation(m, q) == top) ++count;
    }
    g.delta[q] = count;
  }
  return g;
}

u64 r_count(const UnitGroupStructure& g) {
  u64 r = g.phi;
  for (const auto& [q, d] : g.delta) {
    if (d == 0) throw std::logic_error("r_count: Δ_q(n) = 0 for a prime dividing φ(n)");
    u64 qd = 1;
    for (int i = 0; i < d; ++i) qd *= q;
    r = r / qd * (qd - 1);
  }
  return r;
}

OrderOracle::OrderOracle(const FactoredInt& n)
    : n_(n.value()), lambda_(carmichael_lambda(n)) {
  const FactoredInt lf(lambda_);
  lambda_factors_.assign(lf.factors().begin(), lf.factors().end());
}

OrderOracle::OrderOracle(const FactoredInt& n, const FactoredInt& lambda)
    : n_(n.value()), lambda_(lambda.value()), lambda_factors_(lambda.factors().begin(), lambda.factors().end()) {
  if (lambda_ != carmichael_lambda(n)) throw std::invalid_argument("OrderOracle: lambda does not match n");
}

u64 OrderOracle::order(u64 a) const {
  if (n_ == 1) return 1;
  u64 t = lambda_;
  for (const auto& [q, e] : lambda_factors_) {
    for (int i = 0; i < e; ++i) {
      if (pow_mod(a, t / q, n_) != 1) break;
      t /= q;
    }
  }
  return t;
}

bool OrderOracle::is_lambda_primitive_root(u64 a) const {
  if (n_ == 1) return true;
  if (std::gcd(a % n_, n_) != 1) return false;
  for (const auto& pp : lambda_factors_) {
    if (pow_mod(a, lambda_ / pp.prime, n_) == 1) return false;
  }
  return true;
}

u64 r_count_bruteforce(const FactoredInt& n) {
  const u64 mod = n.value();
  if (mod > kBruteForceLimit) throw std::out_of_range("r_count_bruteforce: n above enumeration bound");
  const OrderOracle oracle(n);
  u64 count = 0;
  for (u64 a = 1; a <= mod; ++a) {
    if (std::gcd(a, mod) != 1) continue;
    if (oracle.order(a) == oracle.lambda()) ++count;
  }
  return count;
}

LambdaRootCount lambda_root_count(const FactoredInt& n, bool with_bruteforce) {
  LambdaRootCount out{n, r_count(n), std::nullopt};
  if (with_bruteforce) out.r_brute = r_count_bruteforce(n);
  return out;
}

bool is_lambda_primitive_root(u64 a, const FactoredInt& n) {
  return OrderOracle(n).is_lambda_primitive_root(a);
}

u64 e_subgroup_exponent(const FactoredInt& n) {
  const u64 l = carmichael_lambda(n);
  return l / rad(factorize(l));
}

bool e_membership(u64 a, const FactoredInt& n) {
  const u64 mod = n.value();
  if (std::gcd(a % mod, mod) != 1 && mod != 1) {
    throw std::invalid_argument("e_membership: a and n are not coprime");
  }
  if (mod == 1) return true;
  return pow_mod(a, e_subgroup_exponent(n), mod) == 1;
}

}  // namespace lroot

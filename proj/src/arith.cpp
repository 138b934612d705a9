#include "lroot/arith.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace lroot {

namespace {

constexpr u64 kTrialLimit = 1'000'000;

u64 pollard_brent(u64 n) {
  if (n % 2 == 0) return 2;
  // Deterministic sequence of increments; retries with the next c on failure.
  for (u64 c = 1;; ++c) {
    u64 y = 2, x = 2, g = 1, q = 1, ys = 2;
    const u64 m = 128;
    u64 r = 1;
    auto f = [&](u64 v) { return (mul_mod(v, v, n) + c) % n; };
    do {
      x = y;
      for (u64 i = 0; i < r; ++i) y = f(y);
      u64 k = 0;
      do {
        ys = y;
        for (u64 i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mul_mod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void split_large(u64 n, std::map<u64, int>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  const u64 d = pollard_brent(n);
  split_large(d, out);
  split_large(n / d, out);
}

}  // namespace

u64 mul_mod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<unsigned __int128>(a) * b % m);
}

u64 pow_mod(u64 base, u64 exp, u64 m) {
  if (m == 1) return 0;
  u64 result = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  static constexpr u64 kSmall[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (u64 p : kSmall) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // The first twelve primes are a witness set for every n < 3.3e24.
  for (u64 a : kSmall) {
    u64 x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

FactoredInt::FactoredInt(u64 n) {
  if (n == 0) throw std::invalid_argument("factorize: n must be positive");
  if (n > kMaxFactorizable) throw std::invalid_argument("factorize: n exceeds 2^63");
  value_ = n;
  u64 m = n;
  for (u64 p = 2; p <= kTrialLimit && p * p <= m; p += (p == 2 ? 1 : 2)) {
    if (m % p != 0) continue;
    int e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    factors_.push_back({p, e});
  }
  if (m > 1) {
    std::map<u64, int> large;
    split_large(m, large);
    for (const auto& [p, e] : large) factors_.push_back({p, e});
  }
}

FactoredInt FactoredInt::from_factors(std::vector<PrimePower> factors) {
  FactoredInt out;
  u64 value = 1;
  u64 prev = 0;
  for (const auto& [p, e] : factors) {
    if (p <= prev) throw std::invalid_argument("from_factors: primes must strictly increase");
    if (e < 1) throw std::invalid_argument("from_factors: exponents must be >= 1");
    if (!is_prime(p)) throw std::invalid_argument("from_factors: " + std::to_string(p) + " is not prime");
    for (int i = 0; i < e; ++i) {
      if (value > kMaxFactorizable / p) throw std::invalid_argument("from_factors: value exceeds 2^63");
      value *= p;
    }
    prev = p;
  }
  out.value_ = value;
  out.factors_ = std::move(factors);
  return out;
}

FactoredInt factorize(u64 n) { return FactoredInt(n); }

u64 gcd(u64 a, u64 b) { return std::gcd(a, b); }
u64 lcm(u64 a, u64 b) { return std::lcm(a, b); }

u64 euler_phi(const FactoredInt& n) {
  u64 phi = 1;
  for (const auto& [p, e] : n.factors()) {
    phi *= p - 1;
    for (int i = 1; i < e; ++i) phi *= p;
  }
  return phi;
}

u64 carmichael_lambda_prime_power(u64 p, int e) {
  if (p == 2) {
    if (e <= 2) return u64{1} << (e - 1);
    return u64{1} << (e - 2);
  }
  u64 v = p - 1;
  for (int i = 1; i < e; ++i) v *= p;
  return v;
}

u64 carmichael_lambda(const FactoredInt& n) {
  u64 l = 1;
  for (const auto& [p, e] : n.factors()) l = std::lcm(l, carmichael_lambda_prime_power(p, e));
  return l;
}

u64 rad(const FactoredInt& n) {
  u64 r = 1;
  for (const auto& pp : n.factors()) r *= pp.prime;
  return r;
}

int mobius(const FactoredInt& n) {
  for (const auto& pp : n.factors()) {
    if (pp.exponent > 1) return 0;
  }
  return n.factors().size() % 2 == 0 ? 1 : -1;
}

int omega(const FactoredInt& n) { return static_cast<int>(n.factors().size()); }

u64 tau(const FactoredInt& n) {
  u64 t = 1;
  for (const auto& pp : n.factors()) t *= static_cast<u64>(pp.exponent + 1);
  return t;
}

int valuation(u64 m, u64 p) {
  int v = 0;
  while (m % p == 0) {
    m /= p;
    ++v;
  }
  return v;
}

u64 multiplicative_order(u64 a, const FactoredInt& n) {
  const u64 mod = n.value();
  if (std::gcd(a % mod, mod) != 1 && mod != 1) {
    throw std::invalid_argument("multiplicative_order: a and n are not coprime");
  }
  if (mod == 1) return 1;
  u64 order = carmichael_lambda(n);
  const FactoredInt lf(order);
  for (const auto& [q, e] : lf.factors()) {
    for (int i = 0; i < e; ++i) {
      if (pow_mod(a, order / q, mod) != 1) break;
      order /= q;
    }
  }
  return order;
}

MultiplicativeProfile profile(const FactoredInt& n) {
  return {n, euler_phi(n), carmichael_lambda(n), rad(n), omega(n), mobius(n)};
}

FactorSieve::FactorSieve(u64 limit) : limit_(limit), spf_(limit + 1, 0) {
  for (u64 i = 2; i <= limit; ++i) {
    if (spf_[i] == 0) {
      spf_[i] = static_cast<std::uint32_t>(i);
      primes_.push_back(static_cast<std::uint32_t>(i));
    }
    for (std::uint32_t p : primes_) {
      if (p > spf_[i] || i * p > limit) break;
      spf_[i * p] = p;
    }
  }
}

FactoredInt FactorSieve::factor(u64 n) const {
  if (n == 0 || n > limit_) throw std::out_of_range("FactorSieve: n outside sieve range");
  const u64 value = n;
  std::vector<PrimePower> fs;
  while (n > 1) {
    const u64 p = spf_[n];
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    fs.push_back({p, e});
  }
  // Primes come out ascending, so the invariants hold by construction.
  return FactoredInt(value, std::move(fs));
}

std::vector<u64> phi_table(u64 limit) {
  std::vector<u64> phi(limit + 1);
  std::iota(phi.begin(), phi.end(), u64{0});
  for (u64 p = 2; p <= limit; ++p) {
    if (phi[p] != p) continue;
    for (u64 k = p; k <= limit; k += p) phi[k] -= phi[k] / p;
  }
  return phi;
}

std::vector<u64> primes_up_to(u64 limit) {
  std::vector<u64> out;
  if (limit < 2) return out;
  std::vector<bool> composite(limit + 1, false);
  for (u64 i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (u64 j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return out;
}

}  // namespace lroot

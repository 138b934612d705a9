#include "lroot/characters.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "lroot/cyclotomic.hpp"
#include "lroot/parallel.hpp"

namespace lroot {

namespace {

u64 inverse_mod(u64 a, u64 m) {
  i64 old_r = static_cast<i64>(a % m), r = static_cast<i64>(m);
  i64 old_s = 1, s = 0;
  while (r != 0) {
    const i64 q = old_r / r;
    old_r -= q * r;
    std::swap(old_r, r);
    old_s -= q * s;
    std::swap(old_s, s);
  }
  if (old_r != 1) throw std::invalid_argument("inverse_mod: not invertible");
  const i64 mm = static_cast<i64>(m);
  return static_cast<u64>(((old_s % mm) + mm) % mm);
}

// One prime-power component p^e of the modulus: its generators (mod p^e) and
// a table from residues to exponent vectors (one or two entries).
struct Component {
  u64 modulus = 1;
  std::vector<u64> generators;
  std::vector<std::vector<std::int32_t>> table;
};

Component make_component(u64 p, int e) {
  Component c;
  c.modulus = 1;
  for (int i = 0; i < e; ++i) c.modulus *= p;
  const u64 q = c.modulus;
  if (p == 2) {
    if (e == 1) return c;
    c.table.assign(q, {});
    if (e == 2) {
      c.generators = {3};
      c.table[1] = {0};
      c.table[3] = {1};
      return c;
    }
    c.generators = {q - 1, 5};
    u64 x = 1;
    for (std::int32_t k = 0; k < static_cast<std::int32_t>(q / 4); ++k) {
      c.table[x] = {0, k};
      c.table[q - x] = {1, k};
      x = x * 5 % q;
    }
    return c;
  }
  const OrderOracle oracle(FactoredInt::from_factors({{p, e}}));
  u64 g = 2;
  while (std::gcd(g, q) != 1 || oracle.order(g) != oracle.lambda()) ++g;
  c.generators = {g};
  c.table.assign(q, {});
  u64 x = 1;
  for (std::int32_t k = 0; k < static_cast<std::int32_t>(oracle.lambda()); ++k) {
    c.table[x] = {k};
    x = x * g % q;
  }
  return c;
}

bool is_squarefree(const FactoredInt& f) { return mobius(f) != 0; }

std::vector<std::complex<double>> roots_of_unity(u64 m) {
  std::vector<std::complex<double>> z(m);
  for (u64 j = 0; j < m; ++j) {
    const double angle = 2 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(m);
    z[j] = {std::cos(angle), std::sin(angle)};
  }
  return z;
}

}  // namespace

CharacterGroup::CharacterGroup(const FactoredInt& n) : n_(n), structure_(decompose(n)) {
  const u64 mod = n.value();
  if (mod > kCharacterLimit) throw std::out_of_range("CharacterGroup: modulus above character bound");
  e_exponent_ = structure_.lambda / rad(factorize(structure_.lambda));

  std::vector<Component> comps;
  for (const auto& [p, e] : n.factors()) comps.push_back(make_component(p, e));
  for (const auto& c : comps) {
    const u64 rest = mod / c.modulus;
    for (u64 g : c.generators) {
      // x ≡ g (mod p^e), x ≡ 1 (mod n / p^e)
      const u64 t = ((g + c.modulus - 1) % c.modulus) * inverse_mod(rest % c.modulus, c.modulus) % c.modulus;
      generators_.push_back(rest == 1 ? g % mod : (1 + rest * t) % mod);
    }
  }

  const std::size_t r = rank();
  dlog_.assign(mod * r, -1);
  for (u64 a = 0; a < mod; ++a) {
    if (std::gcd(a, mod) != 1) continue;
    std::size_t slot = 0;
    for (const auto& c : comps) {
      if (c.generators.empty()) continue;
      for (std::int32_t v : c.table[a % c.modulus]) dlog_[a * r + slot++] = v;
    }
  }
}

bool CharacterGroup::is_unit(u64 a) const { return std::gcd(a % n_.value(), n_.value()) == 1; }

std::span<const std::int32_t> CharacterGroup::dlog(u64 a) const {
  const std::size_t r = rank();
  return {dlog_.data() + (a % n_.value()) * r, r};
}

u64 CharacterGroup::value_index(const Character& chi, u64 a) const {
  const auto d = dlog(a);
  const auto orders = factor_orders();
  const u64 l = lambda();
  u64 j = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    j += chi.exponents[i] * static_cast<u64>(d[i]) % orders[i] * (l / orders[i]);
  }
  return j % l;
}

Character CharacterGroup::make_character(std::vector<u64> exponents) const {
  const auto orders = factor_orders();
  if (exponents.size() != orders.size()) throw std::invalid_argument("make_character: wrong exponent count");
  Character chi;
  chi.modulus = n_;
  chi.order = 1;
  chi.is_elementary = true;
  for (std::size_t i = 0; i < orders.size(); ++i) {
    exponents[i] %= orders[i];
    chi.order = std::lcm(chi.order, orders[i] / std::gcd(exponents[i], orders[i]));
    // Trivial on E(n) iff trivial on g_i^{m_i / gcd(m_i, e)} for each i.
    if (exponents[i] % std::gcd(orders[i], e_exponent_) != 0) chi.is_elementary = false;
  }
  chi.exponents = std::move(exponents);
  return chi;
}

std::vector<Character> CharacterGroup::characters() const {
  const auto orders = factor_orders();
  std::vector<Character> out;
  out.reserve(phi());
  std::vector<u64> k(orders.size(), 0);
  for (u64 idx = 0; idx < phi(); ++idx) {
    out.push_back(make_character(k));
    for (std::size_t i = 0; i < k.size(); ++i) {
      if (++k[i] < orders[i]) break;
      k[i] = 0;
    }
  }
  return out;
}

std::size_t CharacterGroup::index_of(std::span<const u64> exponents) const {
  const auto orders = factor_orders();
  std::size_t idx = 0, stride = 1;
  for (std::size_t i = 0; i < orders.size(); ++i) {
    idx += (exponents[i] % orders[i]) * stride;
    stride *= orders[i];
  }
  return idx;
}

std::vector<u64> CharacterGroup::e_subgroup() const {
  const u64 mod = n_.value();
  if (mod == 1) return {1};
  std::vector<u64> out;
  for (u64 a = 1; a < mod; ++a) {
    if (std::gcd(a, mod) == 1 && pow_mod(a, e_exponent_, mod) == 1) out.push_back(a);
  }
  return out;
}

bool CharacterGroup::trivial_on(const Character& chi, std::span<const u64> e_elements) const {
  for (u64 a : e_elements) {
    if (value_index(chi, a) != 0) return false;
  }
  return true;
}

std::vector<u64> CharacterGroup::lambda_primitive_roots() const {
  const OrderOracle oracle(n_);
  std::vector<u64> out;
  for (u64 a = 1; a <= n_.value(); ++a) {
    if (oracle.is_lambda_primitive_root(a)) out.push_back(a);
  }
  return out;
}

u64 rho(const FactoredInt& n, u64 h) {
  if (h == 0) throw std::invalid_argument("rho: h must be positive");
  const FactoredInt hf(h);
  if (!is_squarefree(hf)) throw std::invalid_argument("rho: h must be squarefree");
  const UnitGroupStructure g = decompose(n);
  u64 out = 1;
  for (const auto& pp : hf.factors()) {
    const auto it = g.delta.find(pp.prime);
    if (it == g.delta.end()) throw std::invalid_argument("rho: prime of h does not divide λ(n)");
    u64 qd = 1;
    for (int i = 0; i < it->second; ++i) qd *= pp.prime;
    out *= qd - 1;
  }
  return out;
}

CharacterCoefficient coefficient(const Character& chi) {
  const CharacterGroup group(chi.modulus);
  const u64 ord = chi.order;
  const u64 shift = group.lambda() / ord;
  std::vector<std::int64_t> counts(ord, 0);
  for (u64 b : group.lambda_primitive_roots()) ++counts[group.value_index(chi, b) / shift];
  const auto s = CyclotomicReducer(ord).as_integer(counts);
  if (!s) throw std::logic_error("coefficient: defining sum is not rational");
  CharacterCoefficient out{chi, BigRational(*s, group.phi()), BigRational(0)};
  out.c.canonicalize();
  if (chi.is_elementary) out.c_bar = BigRational(1, rho(chi.modulus, ord));
  return out;
}

CoefficientTable::CoefficientTable(const FactoredInt& n)
    : group_(n), chars_(group_.characters()), roots_(group_.lambda_primitive_roots()) {
  const u64 l = group_.lambda();
  const auto zeta = roots_of_unity(l);
  const auto orders = group_.factor_orders();
  const std::size_t r = group_.rank();

  std::vector<std::int32_t> root_logs;
  root_logs.reserve(roots_.size() * r);
  for (u64 b : roots_) {
    const auto d = group_.dlog(b);
    root_logs.insert(root_logs.end(), d.begin(), d.end());
  }
  std::vector<u64> weight(r);
  for (std::size_t i = 0; i < r; ++i) weight[i] = l / orders[i];

  std::vector<std::complex<double>> numeric(chars_.size());
  for (std::size_t c = 0; c < chars_.size(); ++c) {
    const auto& k = chars_[c].exponents;
    std::complex<double> s = 0;
    for (std::size_t b = 0; b < roots_.size(); ++b) {
      u64 j = 0;
      for (std::size_t i = 0; i < r; ++i) j += k[i] * static_cast<u64>(root_logs[b * r + i]) % orders[i] * weight[i];
      s += zeta[j % l];
    }
    numeric[c] = s;
  }

  sums_.assign(chars_.size(), 0);
  std::vector<bool> done(chars_.size(), false);
  std::vector<u64> conj(r);
  for (std::size_t c = 0; c < chars_.size(); ++c) {
    if (done[c]) continue;
    const auto value = static_cast<std::int64_t>(std::llround(numeric[c].real()));
    const u64 ord = chars_[c].order;
    for (u64 t = 1; t <= ord; ++t) {
      if (std::gcd(t, ord) != 1) continue;
      for (std::size_t i = 0; i < r; ++i) conj[i] = chars_[c].exponents[i] * t % orders[i];
      const std::size_t idx = group_.index_of(conj);
      const double gap = std::abs(numeric[idx] - std::complex<double>(static_cast<double>(value), 0.0));
      if (gap >= 0.25) throw std::logic_error("CoefficientTable: coefficient sum failed integrality certificate");
      max_gap_ = std::max(max_gap_, gap);
      sums_[idx] = value;
      done[idx] = true;
    }
  }
}

BigRational CoefficientTable::c(std::size_t i) const {
  BigRational q(sums_[i], group_.phi());
  q.canonicalize();
  return q;
}

std::vector<BigRational> CoefficientTable::nonprincipal_part(u64 y) const {
  const u64 l = group_.lambda();
  const u64 width = rad(factorize(l));
  const u64 shift = l / width;
  const CyclotomicReducer reducer(width);
  std::vector<std::size_t> active;
  for (std::size_t c = 1; c < chars_.size(); ++c) {
    if (chars_[c].is_elementary && sums_[c] != 0) active.push_back(c);
  }
  std::vector<BigRational> out(y);
  std::vector<std::int64_t> acc(width);
  for (u64 a = 1; a <= y; ++a) {
    if (!group_.is_unit(a) || active.empty()) continue;
    std::fill(acc.begin(), acc.end(), 0);
    for (std::size_t c : active) acc[group_.value_index(chars_[c], a) / shift] += sums_[c];
    const auto v = reducer.as_integer(acc);
    if (!v) throw std::logic_error("nonprincipal_part: character sum is not rational");
    out[a - 1] = BigRational(*v, group_.phi());
    out[a - 1].canonicalize();
  }
  return out;
}

TExpansionResult check_t_expansion(const FactoredInt& n) {
  const CoefficientTable table(n);
  const CharacterGroup& group = table.group();
  const OrderOracle oracle(n);
  const u64 l = group.lambda();
  const auto& chars = table.characters();

  u64 width = 1;
  std::vector<std::size_t> active;
  for (std::size_t c = 0; c < chars.size(); ++c) {
    if (table.sum(c) == 0) continue;
    active.push_back(c);
    width = std::lcm(width, chars[c].order);
  }
  const u64 shift = l / width;
  const CyclotomicReducer reducer(width);
  const auto phi = static_cast<std::int64_t>(group.phi());

  TExpansionResult res;
  std::vector<std::int64_t> acc(width);
  for (u64 a = 1; a <= n.value(); ++a) {
    if (!group.is_unit(a)) continue;
    std::fill(acc.begin(), acc.end(), 0);
    for (std::size_t c : active) acc[group.value_index(chars[c], a) / shift] += table.sum(c);
    const std::int64_t expected = oracle.is_lambda_primitive_root(a) ? phi : 0;
    const auto v = reducer.as_integer(acc);
    if (!v || *v != expected) res.exact_match = false;
    const auto numeric = reducer.evaluate(acc) / static_cast<long double>(phi);
    const double residual = static_cast<double>(std::abs(numeric - static_cast<long double>(expected / phi)));
    res.max_residual = std::max(res.max_residual, residual);
  }
  return res;
}

bool verify_t_expansion(const FactoredInt& n) {
  const auto r = check_t_expansion(n);
  return r.exact_match && r.max_residual < 1e-9;
}

BigRational b_sum(u64 x, u64 y) { return b_sum(x, y, default_workers()); }

BigRational b_sum(u64 x, u64 y, unsigned workers) {
  if (x == 0 || y == 0) throw std::invalid_argument("b_sum: x and y must be positive");
  if (x > kBSumLimit || y > kBSumLimit) throw std::out_of_range("b_sum: x or y above enumeration bound");
  const auto parts = parallel_map(x, workers, [y](std::size_t i) -> BigRational {
    const FactoredInt n(i + 1);
    const CoefficientTable table(n);
    const CharacterGroup& group = table.group();
    const auto& chars = table.characters();
    const u64 l = group.lambda();
    const u64 width = rad(factorize(l));
    const u64 shift = l / width;
    std::vector<std::int64_t> acc(width, 0);
    for (std::size_t c = 1; c < chars.size(); ++c) {
      if (!chars[c].is_elementary || table.sum(c) == 0) continue;
      for (u64 a = 1; a <= y; ++a) {
        if (group.is_unit(a)) acc[group.value_index(chars[c], a) / shift] += table.sum(c);
      }
    }
    const auto v = CyclotomicReducer(width).as_integer(acc);
    if (!v) throw std::logic_error("b_sum: character sum is not rational");
    BigRational part(*v, group.phi());
    part.canonicalize();
    return part;
  });
  BigRational total = 0;
  for (const auto& p : parts) total += p;
  return total;
}

DecompositionParts decomposition_parts(u64 x, u64 y, unsigned workers) {
  DecompositionParts out;
  out.lhs = 0;
  out.principal = 0;
  for (u64 n = 1; n <= x; ++n) {
    const FactoredInt nf(n);
    const OrderOracle oracle(nf);
    u64 hits = 0, coprime = 0;
    for (u64 a = 1; a <= y; ++a) {
      if (oracle.is_lambda_primitive_root(a)) ++hits;
      if (std::gcd(a, n) == 1) ++coprime;
    }
    out.lhs += hits;
    const UnitGroupStructure g = decompose(nf);
    BigRational term(r_count(g) * coprime, g.phi);
    term.canonicalize();
    out.principal += term;
  }
  out.b = b_sum(x, y, workers);
  return out;
}

bool verify_decomposition(u64 x, u64 y) { return verify_decomposition(x, y, default_workers()); }

bool verify_decomposition(u64 x, u64 y, unsigned workers) {
  const auto p = decomposition_parts(x, y, workers);
  return p.lhs == p.principal + p.b;
}

}  // namespace lroot

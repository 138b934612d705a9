#include "lroot/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <stdexcept>

#include <json.hpp>

#include "lroot/characters.hpp"
#include "lroot/constants.hpp"
#include "lroot/parallel.hpp"
#include "lroot/statistics.hpp"
#include "lroot/unit_group.hpp"

namespace lroot {

namespace {

constexpr std::size_t kKeptFailures = 5;

struct SuiteBounds {
  const char* name;
  u64 default_cap;
  u64 max_cap;
};

constexpr SuiteBounds kSuites[] = {
    {"rcount-oracle", 5000, 100'000},
    {"t-expansion", 500, 2000},
    {"decomposition", 100, kBSumLimit},
    {"sigma1-forms", 300, kSigma1Limit},
    {"rho-counts", 2000, kCharacterLimit},
    {"lower-bound", 5000, kPhiPhiLimit},
    {"constants-regression", 100, 10'000},
};

const SuiteBounds& bounds_of(const std::string& suite) {
  for (const auto& s : kSuites) {
    if (suite == s.name) return s;
  }
  throw std::invalid_argument("unknown suite: " + suite);
}

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

using Outcome = std::optional<std::string>;

void record(Check& check, const Outcome& o) {
  ++check.checked;
  if (!o) return;
  ++check.failed;
  if (check.failures.size() < kKeptFailures) check.failures.push_back(*o);
}

// Runs fn over `items` in parallel and folds outcomes in item order.
template <typename Fn>
Check range_check(std::string name, u64 cap, const std::vector<u64>& items, unsigned workers, Fn fn) {
  Check check{std::move(name), cap, 0, 0, {}};
  const auto outcomes = parallel_map(items.size(), workers, [&](std::size_t i) { return fn(items[i]); });
  for (const auto& o : outcomes) record(check, o);
  return check;
}

std::vector<u64> iota_range(u64 first, u64 last) {
  std::vector<u64> v;
  for (u64 n = first; n <= last; ++n) v.push_back(n);
  return v;
}

Check single(std::string name, u64 cap, const Outcome& o) {
  Check check{std::move(name), cap, 0, 0, {}};
  record(check, o);
  return check;
}

SuiteResult rcount_oracle(u64 cap, unsigned workers) {
  SuiteResult s{"rcount-oracle", cap, {}, {}};
  s.checks.push_back(range_check("closed-form-equals-enumeration", cap, iota_range(1, cap), workers, [](u64 n) -> Outcome {
    const FactoredInt nf(n);
    const u64 closed = r_count(nf), brute = r_count_bruteforce(nf);
    if (closed == brute) return std::nullopt;
    return "n=" + std::to_string(n) + " closed=" + std::to_string(closed) + " enumerated=" + std::to_string(brute);
  }));
  // R(p) = φ(p - 1) over primes up to twice the cap.
  s.checks.push_back(range_check("prime-specialization", 2 * cap, primes_up_to(2 * cap), workers, [](u64 p) -> Outcome {
    const u64 r = r_count(FactoredInt(p)), expected = euler_phi(p - 1);
    if (r == expected) return std::nullopt;
    return "p=" + std::to_string(p) + " R=" + std::to_string(r) + " phi(p-1)=" + std::to_string(expected);
  }));
  return s;
}

SuiteResult t_expansion(u64 cap, unsigned workers) {
  SuiteResult s{"t-expansion", cap, {}, {}};
  s.checks.push_back(range_check("character-expansion", cap, iota_range(1, cap), workers, [](u64 n) -> Outcome {
    const auto r = check_t_expansion(FactoredInt(n));
    if (r.exact_match && r.max_residual < 1e-9) return std::nullopt;
    return "n=" + std::to_string(n) + (r.exact_match ? " residual too large" : " exact mismatch");
  }));
  return s;
}

SuiteResult decomposition(u64 cap, unsigned workers) {
  SuiteResult s{"decomposition", cap, {}, {}};
  std::vector<u64> grid;
  for (u64 v : {1, 5, 10, 25, 50, 100, 250, 500}) {
    if (v <= cap) grid.push_back(v);
  }
  if (grid.back() != cap) grid.push_back(cap);
  Check check{"exact-decomposition", cap, 0, 0, {}};
  for (u64 x : grid) {
    for (u64 y : grid) {
      const auto p = decomposition_parts(x, y, workers);
      Outcome o;
      if (p.lhs != p.principal + p.b) o = "x=" + std::to_string(x) + " y=" + std::to_string(y);
      record(check, o);
      if (x == cap && y == cap) s.values["b(cap,cap)"] = to_string(p.b);
    }
  }
  s.checks.push_back(std::move(check));
  // B(1, y) = 0: there are no non-principal characters mod 1.
  s.checks.push_back(single("trivial-modulus", 1, b_sum(1, cap, 1) == 0 ? Outcome{} : Outcome{"B(1,y) != 0"}));
  return s;
}

SuiteResult sigma1_forms(u64 cap, unsigned workers) {
  SuiteResult s{"sigma1-forms", cap, {}, {}};
  s.checks.push_back(range_check("direct-equals-gcd-form", cap, iota_range(1, cap), workers, [](u64 x) -> Outcome {
    if (sigma1_direct(x, 1) == sigma1_gcd_form(x, 1)) return std::nullopt;
    return "x=" + std::to_string(x);
  }));
  s.values["sigma1(cap)"] = to_string(sigma1_direct(cap, workers));
  return s;
}

struct RhoOutcome {
  Outcome flag;
  Outcome counts;
};

SuiteResult rho_counts(u64 cap, unsigned workers) {
  SuiteResult s{"rho-counts", cap, {}, {}};
  const auto outcomes = parallel_map(cap, workers, [](std::size_t i) {
    const u64 n = i + 1;
    const FactoredInt nf(n);
    const CharacterGroup group(nf);
    const auto e = group.e_subgroup();
    std::map<u64, u64> by_order;
    RhoOutcome out;
    for (const auto& chi : group.characters()) {
      const bool enumerated = group.trivial_on(chi, e);
      if (enumerated != chi.is_elementary && !out.flag) {
        out.flag = "n=" + std::to_string(n) + " character order " + std::to_string(chi.order);
      }
      if (enumerated) ++by_order[chi.order];
    }
    // Orders of elementary characters are the squarefree divisors h of rad(λ).
    const u64 rl = rad(factorize(group.lambda()));
    u64 total = 0;
    for (u64 h = 1; h <= rl; ++h) {
      if (rl % h != 0) continue;
      const u64 expected = rho(nf, h);
      total += expected;
      const auto it = by_order.find(h);
      const u64 seen = it == by_order.end() ? 0 : it->second;
      if (seen != expected && !out.counts) {
        out.counts = "n=" + std::to_string(n) + " h=" + std::to_string(h) + " counted=" + std::to_string(seen) +
                     " rho=" + std::to_string(expected);
      }
    }
    u64 counted = 0;
    for (const auto& [h, c] : by_order) counted += c;
    if (counted != total && !out.counts) out.counts = "n=" + std::to_string(n) + " elementary order outside rad(lambda)";
    return out;
  });
  Check flag{"elementary-flag-matches-enumeration", cap, 0, 0, {}};
  Check counts{"per-order-counts-equal-rho", cap, 0, 0, {}};
  for (const auto& o : outcomes) {
    record(flag, o.flag);
    record(counts, o.counts);
  }
  s.checks.push_back(std::move(flag));
  s.checks.push_back(std::move(counts));
  return s;
}

SuiteResult lower_bound(u64 cap, unsigned workers) {
  SuiteResult s{"lower-bound", cap, {}, {}};
  const FactorSieve sieve(cap);
  s.checks.push_back(range_check("r-at-least-phi-phi", cap, iota_range(1, cap), workers, [&sieve](u64 n) -> Outcome {
    const FactoredInt nf = sieve.factor(n);
    const u64 r = r_count(nf), pp = euler_phi(euler_phi(nf));
    if (r >= pp) return std::nullopt;
    return "n=" + std::to_string(n) + " R=" + std::to_string(r) + " phi(phi)=" + std::to_string(pp);
  }));
  const BigRational mean = mean_sum(cap), floor = phi_phi_mean(cap);
  s.checks.push_back(single("partial-sum-bound", cap, mean >= floor ? Outcome{} : Outcome{"mean_sum < phi_phi_mean"}));
  s.values["mean_sum(cap)"] = to_string(mean);
  s.values["phi_phi_sum(cap)"] = std::to_string(phi_phi_sum(cap));
  return s;
}

Outcome near(const std::string& what, double value, double target, double tolerance) {
  if (std::abs(value - target) <= tolerance) return std::nullopt;
  return what + "=" + fixed(value, 12);
}

Check cutoff_doubling(const std::string& name, LocalFactor f) {
  const ConstantValue a = evaluate_accelerated(f, kDefaultCutoff, kMaxDigits);
  const ConstantValue b = evaluate_accelerated(f, 2 * kDefaultCutoff, kMaxDigits);
  const HighFloat moved = abs(a.value - b.value);
  Outcome o;
  if (!(moved < HighFloat("1e-10")) || !(moved <= a.error_bound + b.error_bound)) o = name + " moved by " + moved.str(3);
  // The plain truncation must bracket the accelerated value within its tail bound.
  const ConstantValue t = evaluate_truncated(euler_product_spec(f, kDefaultCutoff));
  if (!o && !(abs(t.value - a.value) <= t.error_bound)) o = name + " outside truncation bracket";
  return single(name + "-cutoff-doubling", 2 * kDefaultCutoff, o);
}

SuiteResult constants_regression(u64 cap, unsigned workers) {
  SuiteResult s{"constants-regression", cap, {}, {}};
  const ConstantValue t12 = theorem12_constant(6);
  const ConstantValue t13 = theorem13_constant(10);
  const double rho1 = rho1_root(1e-10);
  s.checks.push_back(single("theorem12-constant", 0, t12.decimal() == "0.341326" ? Outcome{} : Outcome{t12.decimal()}));
  s.checks.push_back(single("theorem13-constant", 0, near("C", t13.value.convert_to<double>(), 0.003692, 5e-6)));
  s.checks.push_back(single("rho1", 0, near("rho1", rho1, 3.4199057, 1e-6)));
  s.checks.push_back(cutoff_doubling("artin", LocalFactor::kArtin));
  s.checks.push_back(cutoff_doubling("stephens", LocalFactor::kStephens));

  s.checks.push_back(range_check("second-moment-factor-forms", cap, primes_up_to(cap), workers, [](u64 p) -> Outcome {
    if (local_factor(LocalFactor::kSecondMoment, p) == local_factor(LocalFactor::kSecondMomentFactored, p)) {
      return std::nullopt;
    }
    return "p=" + std::to_string(p);
  }));

  // K/4 - f(K) changes sign on [1, 10] and increases along a sampled grid.
  Outcome shape;
  double prev = 1.0 / 4 - f_of_K(1.0);
  if (!(prev < 0) || !(10.0 / 4 - f_of_K(10.0) > 0)) shape = "no sign change on [1, 10]";
  for (int i = 1; i <= 900 && !shape; ++i) {
    const double k = 1 + i * 0.01;
    const double g = k / 4 - f_of_K(k);
    if (!(g > prev)) shape = "not increasing at K=" + fixed(k, 2);
    prev = g;
  }
  s.checks.push_back(single("rho1-bracket", 0, shape));
  s.checks.push_back(single("rho1-threshold", 0,
                            f_of_K(3.419906) < 3.419906 / 4 + 1e-6 ? Outcome{} : Outcome{"f(3.419906) too large"}));

  s.values["artin"] = artin_constant(kMaxDigits).decimal();
  s.values["stephens"] = stephens_constant(kMaxDigits).decimal();
  s.values["theorem12"] = t12.decimal();
  s.values["theorem13"] = t13.decimal();
  s.values["rho1"] = fixed(rho1, 9);
  s.values["f(4.18)"] = fixed(f_of_K(4.18), 10);
  s.values["f(4.87)"] = fixed(f_of_K(4.87), 10);
  return s;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& s : kSuites) v.emplace_back(s.name);
    return v;
  }();
  return names;
}

u64 default_cap(const std::string& suite) { return bounds_of(suite).default_cap; }
u64 max_cap(const std::string& suite) { return bounds_of(suite).max_cap; }

VerifyPlan full_plan(unsigned parallelism) { return {suite_names(), {}, parallelism}; }

void validate(const VerifyPlan& plan) {
  if (plan.parallelism == 0) throw std::invalid_argument("verify: worker count must be positive");
  if (plan.suites.empty()) throw std::invalid_argument("verify: no suites selected");
  for (const auto& name : plan.suites) bounds_of(name);
  for (const auto& [name, cap] : plan.bounds) {
    const auto& b = bounds_of(name);
    if (cap == 0) throw std::invalid_argument("verify: cap for " + name + " must be positive");
    if (cap > b.max_cap) {
      throw std::out_of_range("verify: cap for " + name + " above " + std::to_string(b.max_cap));
    }
  }
}

bool SuiteResult::passed() const {
  return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed(); });
}

bool VerifyReport::passed() const {
  return !suites.empty() && std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.passed(); });
}

const SuiteResult* VerifyReport::find(const std::string& suite) const {
  for (const auto& s : suites) {
    if (s.name == suite) return &s;
  }
  return nullptr;
}

VerifyReport run_verify(const VerifyPlan& plan) {
  validate(plan);
  VerifyReport report;
  // Suites run in canonical order whatever order the plan lists them in.
  for (const auto& name : suite_names()) {
    if (std::find(plan.suites.begin(), plan.suites.end(), name) == plan.suites.end()) continue;
    const auto it = plan.bounds.find(name);
    const u64 cap = it == plan.bounds.end() ? default_cap(name) : it->second;
    const unsigned w = plan.parallelism;
    if (name == "rcount-oracle") report.suites.push_back(rcount_oracle(cap, w));
    else if (name == "t-expansion") report.suites.push_back(t_expansion(cap, w));
    else if (name == "decomposition") report.suites.push_back(decomposition(cap, w));
    else if (name == "sigma1-forms") report.suites.push_back(sigma1_forms(cap, w));
    else if (name == "rho-counts") report.suites.push_back(rho_counts(cap, w));
    else if (name == "lower-bound") report.suites.push_back(lower_bound(cap, w));
    else report.suites.push_back(constants_regression(cap, w));
  }
  return report;
}

std::string report_json(const VerifyReport& report) {
  using nlohmann::ordered_json;
  ordered_json suites = ordered_json::array();
  for (const auto& s : report.suites) {
    ordered_json checks = ordered_json::array();
    for (const auto& c : s.checks) {
      checks.push_back({{"name", c.name},
                        {"cap", c.cap},
                        {"checked", c.checked},
                        {"failed", c.failed},
                        {"passed", c.passed()},
                        {"failures", c.failures}});
    }
    ordered_json values = ordered_json::object();
    for (const auto& [k, v] : s.values) values[k] = v;
    suites.push_back({{"name", s.name}, {"cap", s.cap}, {"passed", s.passed()}, {"checks", checks}, {"values", values}});
  }
  ordered_json root{{"passed", report.passed()}, {"suites", suites}};
  return root.dump(2) + "\n";
}

}  // namespace lroot

// lroot: command-line front end. Every subcommand prints one JSON document
// (or CSV / plain text with --format); failures print {"error": {...}} and
// exit nonzero.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "lroot/arith.hpp"
#include "lroot/characters.hpp"
#include "lroot/constants.hpp"
#include "lroot/parallel.hpp"
#include "lroot/statistics.hpp"
#include "lroot/unit_group.hpp"
#include "lroot/verify.hpp"

using nlohmann::ordered_json;
using namespace lroot;

namespace {

constexpr int kExitFailure = 1;      // verify ran and a suite failed
constexpr int kExitBadRequest = 2;   // argument or bound violation
constexpr int kExitInternal = 3;

// A command result: JSON document plus its plain-text rendering. CSV is
// derived from the JSON unless a command supplies its own table.
struct Output {
  ordered_json json;
  std::string plain;
  std::string csv;
  int status = 0;
};

std::string csv_field(const ordered_json& v) {
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

std::string csv_from_object(const ordered_json& obj) {
  std::string head, row;
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!head.empty()) {
      head += ',';
      row += ',';
    }
    head += it.key();
    row += csv_field(it.value());
  }
  return head + "\n" + row + "\n";
}

void put_rational(ordered_json& j, const std::string& prefix, const BigRational& q) {
  j[prefix + "_num"] = numerator_string(q);
  j[prefix + "_den"] = denominator_string(q);
}

std::string plain_rational(const BigRational& q) { return to_string(q); }

// Parses "10,20,40" or "first:last[:step]".
std::vector<u64> parse_grid(const std::string& spec) {
  std::vector<u64> out;
  auto number = [](const std::string& s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
      throw std::invalid_argument("grid: not a positive integer: '" + s + "'");
    }
    const u64 v = std::stoull(s);
    if (v == 0) throw std::invalid_argument("grid: values must be positive");
    return v;
  };
  if (spec.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    if (parts.size() < 2 || parts.size() > 3) throw std::invalid_argument("grid: expected first:last[:step]");
    const u64 first = number(parts[0]), last = number(parts[1]);
    const u64 step = parts.size() == 3 ? number(parts[2]) : 1;
    if (last < first) throw std::invalid_argument("grid: last below first");
    for (u64 v = first; v <= last; v += step) out.push_back(v);
  } else {
    std::stringstream ss(spec);
    for (std::string p; std::getline(ss, p, ',');) out.push_back(number(p));
  }
  if (out.empty()) throw std::invalid_argument("grid: empty");
  return out;
}

void require_positive(u64 v, const char* what) {
  if (v == 0) throw std::invalid_argument(std::string(what) + " must be positive");
}

ordered_json sweep_json(const SweepReport& r) {
  ordered_json j;
  j["x"] = r.config.x;
  j["y"] = r.config.y;
  put_rational(j, "mean", r.mean);
  put_rational(j, "m2", r.second_moment);
  put_rational(j, "sigma1", r.sigma1);
  j["phi_phi_sum"] = r.phi_phi_sum;
  ordered_json diag = ordered_json::object();
  for (const auto& [k, v] : r.ratios) diag[k] = v;
  j["diagnostics"] = diag;
  return j;
}

std::string decimal_for_tolerance(double v, double tol) {
  const int places = std::max(0, static_cast<int>(std::ceil(-std::log10(tol))));
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", places, v);
  return buf;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"λ-primitive roots: counts, characters, moments and constants"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "json";
  unsigned workers = default_workers();
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv", "plain"}));
  app.add_option("--workers", workers, "Worker threads (default: $LROOT_WORKERS or hardware threads)")
      ->check(CLI::PositiveNumber);

  std::function<Output()> run;

  u64 n = 0, a = 0, x = 0, y = 0;

  auto* lambda_cmd = app.add_subcommand("lambda", "Carmichael λ(n)");
  lambda_cmd->add_option("n", n)->required();
  lambda_cmd->callback([&] {
    run = [&] {
      const FactoredInt f(n);
      const u64 l = carmichael_lambda(f);
      return Output{{{"n", n}, {"lambda", l}}, std::to_string(l), {}};
    };
  });

  auto* order_cmd = app.add_subcommand("order", "Multiplicative order of a mod n");
  order_cmd->add_option("a", a)->required();
  order_cmd->add_option("n", n)->required();
  order_cmd->callback([&] {
    run = [&] {
      const FactoredInt f(n);
      const u64 o = multiplicative_order(a, f);
      const bool prim = is_lambda_primitive_root(a, f);
      return Output{{{"a", a}, {"n", n}, {"order", o}, {"lambda_primitive", prim}}, std::to_string(o), {}};
    };
  });

  bool no_brute = false;
  auto* rcount_cmd = app.add_subcommand("rcount", "Number R(n) of λ-primitive roots in [1, n]");
  rcount_cmd->add_option("n", n)->required();
  rcount_cmd->add_flag("--no-brute", no_brute, "Skip the enumeration oracle");
  rcount_cmd->callback([&] {
    run = [&] {
      const FactoredInt f(n);
      const auto r = lambda_root_count(f, !no_brute && n <= kBruteForceLimit);
      ordered_json j{{"n", n}, {"r_closed", r.r_closed}};
      if (r.r_brute) j["r_brute"] = *r.r_brute;
      return Output{j, std::to_string(r.r_closed), {}};
    };
  });

  auto* delta_cmd = app.add_subcommand("delta", "Unit-group structure and Δ_q(n)");
  delta_cmd->add_option("n", n)->required();
  delta_cmd->callback([&] {
    run = [&] {
      const auto g = decompose(FactoredInt(n));
      ordered_json d = ordered_json::object();
      std::string plain;
      for (const auto& [q, v] : g.delta) {
        d[std::to_string(q)] = v;
        plain += (plain.empty() ? "" : " ") + std::to_string(q) + ":" + std::to_string(v);
      }
      ordered_json j{{"n", n}, {"phi", g.phi}, {"lambda", g.lambda}, {"cyclic_orders", g.cyclic_orders}, {"delta", d}};
      return Output{j, plain, {}};
    };
  });

  bool elementary_only = false;
  auto* chars_cmd = app.add_subcommand("characters", "Characters mod n with c(χ) and c̄(χ)");
  chars_cmd->add_option("n", n)->required();
  chars_cmd->add_flag("--elementary", elementary_only, "List elementary characters only");
  chars_cmd->callback([&] {
    run = [&] {
      const CoefficientTable table{FactoredInt(n)};
      const auto& chars = table.characters();
      ordered_json list = ordered_json::array();
      std::string plain, csv = "exponents,order,elementary,c_num,c_den,c_bar_num,c_bar_den\n";
      for (std::size_t i = 0; i < chars.size(); ++i) {
        const auto& chi = chars[i];
        if (elementary_only && !chi.is_elementary) continue;
        const BigRational c = table.c(i);
        BigRational cbar(0);
        if (chi.is_elementary) cbar = BigRational(1, rho(chi.modulus, chi.order));
        std::string exps;
        for (u64 e : chi.exponents) exps += (exps.empty() ? "" : " ") + std::to_string(e);
        ordered_json entry{{"exponents", chi.exponents}, {"order", chi.order}, {"elementary", chi.is_elementary}};
        put_rational(entry, "c", c);
        put_rational(entry, "c_bar", cbar);
        list.push_back(entry);
        plain += "[" + exps + "] order=" + std::to_string(chi.order) + (chi.is_elementary ? " elementary" : "") +
                 " c=" + to_string(c) + " c_bar=" + to_string(cbar) + "\n";
        csv += exps + "," + std::to_string(chi.order) + "," + (chi.is_elementary ? "true" : "false") + "," +
               numerator_string(c) + "," + denominator_string(c) + "," + numerator_string(cbar) + "," +
               denominator_string(cbar) + "\n";
      }
      ordered_json j{{"n", n}, {"count", list.size()}, {"characters", list}};
      if (!plain.empty()) plain.pop_back();
      return Output{j, plain, csv};
    };
  });

  auto* na_cmd = app.add_subcommand("na", "N_a(x): moduli n <= x with a λ-primitive root");
  na_cmd->add_option("a", a)->required();
  na_cmd->add_option("x", x)->required();
  na_cmd->callback([&] {
    run = [&] {
      require_positive(a, "a");
      require_positive(x, "x");
      const u64 c = n_count(a, x);
      return Output{{{"a", a}, {"x", x}, {"count", c}}, std::to_string(c), {}};
    };
  });

  auto* pa_cmd = app.add_subcommand("pa", "P_a(x): primes p <= x with a a primitive root");
  pa_cmd->add_option("a", a)->required();
  pa_cmd->add_option("x", x)->required();
  pa_cmd->callback([&] {
    run = [&] {
      require_positive(a, "a");
      const u64 c = p_count(a, x);
      return Output{{{"a", a}, {"x", x}, {"count", c}}, std::to_string(c), {}};
    };
  });

  bool exclude_one = false;
  auto* mean_cmd = app.add_subcommand("mean", "Σ_{n<=x} R(n)/n");
  mean_cmd->add_option("x", x)->required();
  mean_cmd->add_flag("--exclude-one", exclude_one, "Leave n = 1 out of the sum");
  mean_cmd->callback([&] {
    run = [&] {
      require_positive(x, "x");
      const BigRational m = mean_sum(MomentConfig{x, 1, !exclude_one});
      ordered_json j{{"x", x}};
      put_rational(j, "mean", m);
      return Output{j, plain_rational(m), {}};
    };
  });

  auto* m2_cmd = app.add_subcommand("moment2", "(1/y) Σ_{a<=y} (N_a(x) - mean)^2");
  m2_cmd->add_option("x", x)->required();
  m2_cmd->add_option("y", y)->required();
  m2_cmd->add_flag("--exclude-one", exclude_one, "Leave n = 1 out of N_a(x) and the mean");
  m2_cmd->callback([&] {
    run = [&] {
      require_positive(x, "x");
      require_positive(y, "y");
      const BigRational m = second_moment(MomentConfig{x, y, !exclude_one}, workers);
      ordered_json j{{"x", x}, {"y", y}};
      put_rational(j, "m2", m);
      return Output{j, plain_rational(m), {}};
    };
  });

  std::string form = "both";
  auto* sigma1_cmd = app.add_subcommand("sigma1", "Σ₁ as a direct double sum and regrouped by gcd");
  sigma1_cmd->add_option("x", x)->required();
  sigma1_cmd->add_option("--form", form)->check(CLI::IsMember({"direct", "gcd", "both"}));
  sigma1_cmd->callback([&] {
    run = [&] {
      require_positive(x, "x");
      ordered_json j{{"x", x}};
      std::string plain;
      BigRational direct, gcd_form;
      if (form != "gcd") {
        direct = sigma1_direct(x, workers);
        put_rational(j, "direct", direct);
        plain = to_string(direct);
      }
      if (form != "direct") {
        gcd_form = sigma1_gcd_form(x, workers);
        put_rational(j, "gcd_form", gcd_form);
        plain = to_string(gcd_form);
      }
      if (form == "both") j["equal"] = direct == gcd_form;
      return Output{j, plain, {}};
    };
  });

  bool decompose_flag = false;
  auto* bsum_cmd = app.add_subcommand("bsum", "B(x, y) over non-principal elementary characters");
  bsum_cmd->add_option("x", x)->required();
  bsum_cmd->add_option("y", y)->required();
  bsum_cmd->add_flag("--decompose", decompose_flag, "Also report both sides of the exact decomposition");
  bsum_cmd->callback([&] {
    run = [&] {
      require_positive(x, "x");
      require_positive(y, "y");
      ordered_json j{{"x", x}, {"y", y}};
      BigRational b;
      if (decompose_flag) {
        if (x > kBSumLimit || y > kBSumLimit) throw std::out_of_range("bsum: x or y above enumeration bound");
        const auto p = decomposition_parts(x, y, workers);
        b = p.b;
        put_rational(j, "b", p.b);
        put_rational(j, "lhs", p.lhs);
        put_rational(j, "principal", p.principal);
        j["identity_holds"] = p.lhs == p.principal + p.b;
      } else {
        b = b_sum(x, y, workers);
        put_rational(j, "b", b);
      }
      return Output{j, plain_rational(b), {}};
    };
  });

  int digits = 20;
  auto* const_cmd = app.add_subcommand("constants", "Euler-product constants with error bounds");
  const_cmd->add_option("--digits", digits, "Decimal digits (1-30)")->check(CLI::Range(1, kMaxDigits));
  const_cmd->callback([&] {
    run = [&] {
      ordered_json list = ordered_json::array();
      std::string plain, csv = "name,value,error_bound,digits\n";
      for (const auto& v : {artin_constant(digits), stephens_constant(digits), theorem12_constant(digits),
                            theorem13_constant(digits)}) {
        list.push_back({{"name", v.name}, {"value", v.decimal()}, {"error_bound", v.error_string()}, {"digits", v.digits}});
        plain += v.name + " " + v.decimal() + " ± " + v.error_string() + "\n";
        csv += v.name + "," + v.decimal() + "," + v.error_string() + "," + std::to_string(v.digits) + "\n";
      }
      plain.pop_back();
      return Output{{{"constants", list}}, plain, csv};
    };
  });

  double tol = 1e-7;
  auto* rho1_cmd = app.add_subcommand("rho1", "Root of K/4 = f(K)");
  rho1_cmd->add_option("--tol", tol, "Bisection tolerance (>= 1e-12)");
  rho1_cmd->callback([&] {
    run = [&] {
      const double r = rho1_root(tol);
      const std::string s = decimal_for_tolerance(r, tol);
      ordered_json j{{"rho1", s}, {"tolerance", tol}, {"f(4.18)", f_of_K(4.18)}, {"f(4.87)", f_of_K(4.87)}};
      return Output{j, s, {}};
    };
  });

  bool all = false;
  std::vector<std::string> suites;
  std::vector<std::string> caps;
  auto* verify_cmd = app.add_subcommand("verify", "Run verification suites and print a JSON report");
  verify_cmd->add_flag("--all", all, "Run every suite at its default cap");
  verify_cmd->add_option("--suite", suites, "Suite to run (repeatable)")->check(CLI::IsMember(suite_names()));
  verify_cmd->add_option("--cap", caps, "Override a cap as suite=N (repeatable)");
  verify_cmd->callback([&] {
    run = [&] {
      if (all == !suites.empty()) throw std::invalid_argument("verify: give either --all or at least one --suite");
      VerifyPlan plan = all ? full_plan(workers) : VerifyPlan{suites, {}, workers};
      for (const auto& c : caps) {
        const auto eq = c.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("verify: --cap expects suite=N");
        const auto grid = parse_grid(c.substr(eq + 1));
        if (grid.size() != 1) throw std::invalid_argument("verify: --cap expects a single value");
        plan.bounds[c.substr(0, eq)] = grid[0];
      }
      const VerifyReport report = run_verify(plan);
      Output out;
      out.json = ordered_json::parse(report_json(report));
      out.status = report.passed() ? 0 : kExitFailure;
      out.csv = "suite,check,cap,checked,failed,passed\n";
      for (const auto& s : report.suites) {
        out.plain += s.name + ": " + (s.passed() ? "PASS" : "FAIL") + "\n";
        for (const auto& c : s.checks) {
          out.csv += s.name + "," + c.name + "," + std::to_string(c.cap) + "," + std::to_string(c.checked) + "," +
                     std::to_string(c.failed) + "," + (c.passed() ? "true" : "false") + "\n";
        }
      }
      out.plain.pop_back();
      return out;
    };
  });

  std::string metric = "report", x_spec, y_spec = "x";
  bool quiet = false;
  auto* sweep_cmd = app.add_subcommand("sweep", "Grid sweep over (x, y), CSV rows in (x, y) order");
  sweep_cmd->add_option("--metric", metric)->check(CLI::IsMember({"mean", "moment2", "sigma1", "phi_phi", "report"}));
  sweep_cmd->add_option("--x", x_spec, "x grid: a,b,c or first:last[:step]")->required();
  sweep_cmd->add_option("--y", y_spec, "y grid, or 'x' to pair y = x");
  sweep_cmd->add_flag("--quiet", quiet, "No progress on stderr");
  sweep_cmd->callback([&] {
    run = [&] {
      const auto xs = parse_grid(x_spec);
      std::vector<std::pair<u64, u64>> points;
      if (y_spec == "x") {
        for (u64 v : xs) points.emplace_back(v, v);
      } else {
        for (u64 xv : xs) {
          for (u64 yv : parse_grid(y_spec)) points.emplace_back(xv, yv);
        }
      }
      std::sort(points.begin(), points.end());
      points.erase(std::unique(points.begin(), points.end()), points.end());
      // Validate the whole grid before doing any work.
      for (const auto& [px, py] : points) {
        if ((metric == "moment2" || metric == "report") && px > kSweepBudget / py) {
          throw BudgetExceeded("sweep: x*y above budget at x=" + std::to_string(px) + ", y=" + std::to_string(py));
        }
        if ((metric == "sigma1" || metric == "report") && px > kSigma1Limit) {
          throw std::out_of_range("sweep: x above sigma1 bound at x=" + std::to_string(px));
        }
        if (metric == "phi_phi" && px > kPhiPhiLimit) throw std::out_of_range("sweep: x above phi_phi bound");
      }

      Output out;
      out.json = ordered_json::array();
      out.csv = "x,y,metric,num,den\n";
      auto row = [&](u64 px, u64 py, const std::string& name, const BigRational& q) {
        out.csv += std::to_string(px) + "," + std::to_string(py) + "," + name + "," + numerator_string(q) + "," +
                   denominator_string(q) + "\n";
      };
      std::size_t k = 0;
      for (const auto& [px, py] : points) {
        if (!quiet) std::cerr << "[" << ++k << "/" << points.size() << "] x=" << px << " y=" << py << std::endl;
        const MomentConfig cfg{px, py, true};
        ordered_json j{{"x", px}, {"y", py}};
        if (metric == "mean") {
          const auto m = mean_sum(cfg);
          row(px, py, "mean", m);
          put_rational(j, "mean", m);
        } else if (metric == "moment2") {
          const auto m = second_moment(cfg, workers);
          row(px, py, "m2", m);
          put_rational(j, "m2", m);
        } else if (metric == "sigma1") {
          const auto s = sigma1_direct(px, workers);
          row(px, py, "sigma1", s);
          put_rational(j, "sigma1", s);
        } else if (metric == "phi_phi") {
          const BigRational s(static_cast<unsigned long>(phi_phi_sum(px)));
          row(px, py, "phi_phi_sum", s);
          j["phi_phi_sum"] = phi_phi_sum(px);
        } else {
          const SweepReport r = sweep_report(cfg, workers);
          row(px, py, "mean", r.mean);
          row(px, py, "m2", r.second_moment);
          row(px, py, "sigma1", r.sigma1);
          row(px, py, "phi_phi_sum", BigRational(static_cast<unsigned long>(r.phi_phi_sum)));
          j = sweep_json(r);
        }
        out.json.push_back(j);
      }
      out.plain = out.csv;
      out.plain.pop_back();
      return out;
    };
  });

  auto error_out = [](const std::string& type, const std::string& message, int status) {
    ordered_json j{{"error", {{"type", type}, {"message", message}}}};
    std::cout << j.dump() << "\n";
    return status;
  };

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return error_out("usage", e.what(), kExitBadRequest);
  }
  if (sweep_cmd->parsed() && app.get_option("--format")->count() == 0) format = "csv";

  try {
    const Output out = run();
    if (format == "json") {
      std::cout << out.json.dump() << "\n";
    } else if (format == "plain") {
      std::cout << out.plain << "\n";
    } else {
      std::cout << (out.csv.empty() ? csv_from_object(out.json) : out.csv);
    }
    return out.status;
  } catch (const BudgetExceeded& e) {
    return error_out("budget_exceeded", e.what(), kExitBadRequest);
  } catch (const std::out_of_range& e) {
    return error_out("bound_exceeded", e.what(), kExitBadRequest);
  } catch (const std::invalid_argument& e) {
    return error_out("invalid_argument", e.what(), kExitBadRequest);
  } catch (const std::domain_error& e) {
    return error_out("invalid_argument", e.what(), kExitBadRequest);
  } catch (const std::exception& e) {
    return error_out("internal", e.what(), kExitInternal);
  }
}

#include <doctest.h>
#include <json.hpp>

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

using json = nlohmann::ordered_json;

namespace {

struct Run {
  std::string out;
  int status;
};

Run cli(const std::string& args) {
  const std::string cmd = std::string(LROOT_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  const int raw = pclose(pipe);
  return {out, WIFEXITED(raw) ? WEXITSTATUS(raw) : -1};
}

json cli_json(const std::string& args) {
  const auto r = cli(args);
  REQUIRE(r.status == 0);
  return json::parse(r.out);
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("single-value queries") {
  CHECK(cli("rcount 8").out == "{\"n\":8,\"r_closed\":3,\"r_brute\":3}\n");
  CHECK(cli("lambda 1 --format plain").out == "1\n");
  CHECK(cli("rho1 --tol 1e-7 --format plain").out == "3.4199057\n");
  CHECK(cli_json("lambda 561")["lambda"] == 80);
  CHECK(cli_json("order 3 7")["order"] == 6);
  CHECK(cli_json("na 2 10")["count"] == 4);
  CHECK(cli_json("pa 2 20")["count"] == 5);
  const auto d = cli_json("delta 24");
  CHECK(d["cyclic_orders"] == json::array({2, 2, 2}));
  CHECK(d["delta"]["2"] == 3);
}

TEST_CASE("exact rationals are numerator/denominator strings") {
  const auto m = cli_json("mean 3");
  CHECK(m["mean_num"] == "11");
  CHECK(m["mean_den"] == "6");
  const auto s = cli_json("sigma1 2");
  CHECK(s["direct_num"] == "1");
  CHECK(s["direct_den"] == "4");
  CHECK(s["equal"] == true);
  const auto b = cli_json("bsum 5 5 --decompose");
  CHECK(b["identity_holds"] == true);
  const auto c = cli_json("characters 5");
  CHECK(c["count"] == 4);
  CHECK(c["characters"][0]["c_num"] == "1");
  CHECK(c["characters"][0]["c_den"] == "2");
}

TEST_CASE("errors are machine readable") {
  for (const char* args : {"lambda 0", "order 2 4", "sigma1 5000", "moment2 100000 10000", "rho1 --tol 1e-20",
                           "frobnicate", "verify --suite t-expansion --cap t-expansion=999999", "na 0 5"}) {
    const auto r = cli(args);
    CAPTURE(args);
    CHECK(r.status == 2);
    const auto j = json::parse(r.out);
    CHECK(j.contains("error"));
    CHECK(j["error"]["message"].is_string());
  }
  CHECK(json::parse(cli("moment2 100000 10000").out)["error"]["type"] == "budget_exceeded");
}

TEST_CASE("sweep CSV") {
  CHECK(cli("sweep --metric sigma1 --x 1,2").out == "x,y,metric,num,den\n1,1,sigma1,0,1\n2,2,sigma1,1,4\n");
  CHECK(cli("sweep --metric mean --x 1").out == "x,y,metric,num,den\n1,1,mean,1,1\n");
  const auto m2 = cli("sweep --metric moment2 --x 20,10");
  CHECK(m2.out.rfind("x,y,metric,num,den\n10,10,m2,", 0) == 0);
  CHECK(m2.out.find("\n20,20,m2,") != std::string::npos);
  CHECK(cli("sweep --metric moment2 --x 10:30:10 --y 5 --workers 1").out ==
        cli("sweep --metric moment2 --x 10:30:10 --y 5 --workers 6").out);
}

TEST_CASE("sweep report JSON schema") {
  const auto j = cli_json("sweep --x 100 --format json");
  REQUIRE(j.is_array());
  const auto& r = j[0];
  std::vector<std::string> keys;
  for (auto it = r.begin(); it != r.end(); ++it) keys.push_back(it.key());
  CHECK(keys == std::vector<std::string>{"x", "y", "mean_num", "mean_den", "m2_num", "m2_den", "sigma1_num",
                                         "sigma1_den", "phi_phi_sum", "diagnostics"});
  CHECK(r["diagnostics"].size() == 4);
  CHECK(cli_json("sweep --x 10 --format json")[0]["diagnostics"].empty());
}

TEST_CASE("verify exit status and determinism") {
  const auto a = cli("verify --suite rho-counts --cap rho-counts=100 --workers 1");
  const auto b = cli("verify --suite rho-counts --cap rho-counts=100 --workers 4");
  CHECK(a.status == 0);
  CHECK(a.out == b.out);
  CHECK(json::parse(a.out)["passed"] == true);
  CHECK(cli("verify").status == 2);
}

}

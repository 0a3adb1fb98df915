#include <doctest.h>

#include <array>
#include <cstdio>
#include <memory>
#include <sstream>

#include <nlohmann/json.hpp>

#include "coprimality/cli.hpp"
#include "coprimality/counting.hpp"
#include "coprimality/report.hpp"

using namespace coprimality;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

Json parsed(const Outcome& o) { return Json::parse(o.out); }

std::string run_binary(const std::string& args) {
  const std::string cmd = std::string(COPRIMALITY_CLI_PATH) + " " + args;
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmd.c_str(), "r"), pclose);
  REQUIRE(pipe);
  std::string text;
  std::array<char, 4096> buf{};
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe.get())) text.append(buf.data(), n);
  return text;
}

}  // namespace

TEST_CASE("density report matches the library") {
  const Outcome o = invoke({"density", "--n", "1000"});
  REQUIRE(o.code == cli::kExitOk);
  const Json j = parsed(o);
  CHECK(j["command"] == "density");
  CHECK(j["config"]["mobius_limit"] == "1000");
  const MobiusTable mu(1000);
  CHECK(j["result"] == to_json(density(1000, 1000, mu)));
  CHECK(j["result"]["count"] == "608383");
}

TEST_CASE("count methods agree") {
  const Json j = parsed(invoke({"count", "--n1", "7", "--n2", "13", "--method", "both"}));
  CHECK(j["result"]["mobius_count"] == "64");
  CHECK(j["result"]["brute_count"] == "64");
  CHECK(j["result"]["agree"] == true);
}

TEST_CASE("residue bound at four primes") {
  const Json j = parsed(invoke({"residue-bound", "--primes", "4"}));
  CHECK(j["result"]["bound_num"] == "768");
  CHECK(j["result"]["bound_den"] == "1225");
  CHECK(j["result"]["largest_prime"] == "7");
}

TEST_CASE("crt, shift witness and measure outputs") {
  const Json crt = parsed(invoke({"crt", "--congruence", "2:3", "--congruence", "3:5"}));
  CHECK(crt["result"]["solution"] == "8");
  CHECK(crt["result"]["modulus"] == "15");

  const Json shift = parsed(invoke({"shift-witness", "--pair", "1,2", "--pair", "3,4"}));
  CHECK(shift["result"]["verified"] == true);

  const Json m = parsed(invoke({"measure", "--expr", "A{2|} U A{3|}"}));
  CHECK(m["result"]["measure_num"] == "2");
  CHECK(m["result"]["measure_den"] == "3");

  const Json rect = parsed(invoke({"rect", "--j1", "0", "--k1", "4", "--j2", "2", "--k2", "6"}));
  CHECK(rect["result"]["criterion"] == false);
  CHECK(rect["result"]["search"].is_null());
}

TEST_CASE("csv output carries metadata and a header row") {
  const Outcome o = invoke({"--format", "csv", "density", "--n", "10"});
  REQUIRE(o.code == cli::kExitOk);
  CHECK(o.out.find("# command=density\n") == 0);
  CHECK(o.out.find("n1,n2,count,ratio_num,ratio_den,partial_sum_num,partial_sum_den,error_num,error_den\n"
                   "10,10,63,63,100,") != std::string::npos);
}

TEST_CASE("help and usage errors") {
  const Outcome help = invoke({"--help"});
  CHECK(help.code == cli::kExitOk);
  CHECK(help.out.find("density") != std::string::npos);

  const Outcome missing = invoke({"count"});
  CHECK(missing.code == cli::kExitUsage);
  CHECK(missing.out.empty());
  CHECK_FALSE(missing.err.empty());

  CHECK(invoke({"density", "--n", "-3"}).code == cli::kExitUsage);
  CHECK(invoke({"--format", "xml", "density", "--n", "3"}).code == cli::kExitUsage);
  CHECK(invoke({"no-such-command"}).code == cli::kExitUsage);
}

TEST_CASE("computation errors are reported as json") {
  const Outcome cap = invoke({"--brute-cap", "10", "count", "--n1", "100", "--n2", "100", "--method", "brute"});
  CHECK(cap.code == cli::kExitComputation);
  const Json j = parsed(cap);
  CHECK(j["error"]["kind"] == "cap-exceeded");
  CHECK_FALSE(j.contains("result"));

  const Outcome small = invoke({"--mobius-limit", "5", "density", "--n", "100"});
  CHECK(small.code == cli::kExitComputation);
  CHECK(parsed(small)["error"]["kind"] == "invalid-argument");

  const Outcome bad_expr = invoke({"measure", "--expr", "A{4|}"});
  CHECK(bad_expr.code == cli::kExitComputation);
  CHECK(parsed(bad_expr)["error"]["kind"] == "parse-error");

  const Outcome unsolvable = invoke({"crt", "--congruence", "1:4", "--congruence", "2:6"});
  CHECK(unsolvable.code == cli::kExitComputation);
}

TEST_CASE("identical arguments give identical bytes") {
  const std::vector<std::string> args{"--seed", "7", "sample", "--primes", "10", "--samples", "20000"};
  CHECK(invoke(args).out == invoke(args).out);
  const Json a = parsed(invoke(args));
  const Json b = parsed(invoke({"--seed", "8", "sample", "--primes", "10", "--samples", "20000"}));
  CHECK(a["config"]["seed"] == "7");
  CHECK(a["result"] != b["result"]);
}

TEST_CASE("installed binary matches in-process output") {
  CHECK(run_binary("density --n 100") == invoke({"density", "--n", "100"}).out);
  CHECK(run_binary("--format plain euler-product --primes 3") ==
        invoke({"--format", "plain", "euler-product", "--primes", "3"}).out);
}

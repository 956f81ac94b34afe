#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>
#include <string>
#include <vector>

#include "qbailey/cli.hpp"

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "qbailey");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = qbailey::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

const std::string kFixture = std::string(QBAILEY_FIXTURE_DIR) + "/negative_alpha.pair.json";

}  // namespace

TEST_CASE("tri") {
  CHECK(run({"tri", "--def", "eq1", "--L", "2", "--A", "0"}).out == "1 + q + q^2\n");
  CHECK(run({"tri", "--def", "T", "--n", "0", "--L", "2", "--A", "1"}).out == "q^(1/2) + q^(3/2)\n");
  CHECK(run({"tri", "--def", "T", "--n", "0", "--L", "2", "--A", "1", "--units", "t"}).out == "t + t^3\n");
  CHECK(run({"tri", "--def", "Q", "--n", "0", "--L", "2", "--A", "0", "--order", "8"}).out ==
        "1 + 2*q + 4*q^2 + 5*q^3 + 7*q^4 + O(q^(9/2))\n");

  const auto both = run({"tri", "--def", "both", "--n", "1", "--L", "3", "--A", "1", "--order", "10"});
  CHECK(both.code == 0);
  CHECK(both.out ==
        "T: 1 + 2*q + 2*q^2 + q^3\n"
        "Q: 1 + 3*q + 6*q^2 + 10*q^3 + 15*q^4 + 21*q^5 + O(q^(11/2))\n"
        "Q*(q)_L vs T: equal to order 10\n");

  CHECK(run({"tri", "--def", "eq1", "--L", "1", "--A", "2"}).out == "0\n");
  CHECK(run({"tri", "--def", "eq1"}).code == qbailey::exit_usage);
}

TEST_CASE("catalog") {
  const auto list = run({"catalog", "list"});
  CHECK(list.code == 0);
  CHECK(list.out.find("A1  binomial ell=0\n") != std::string::npos);
  CHECK(list.out.find("AB-A2-trinomial:1  trinomial n=1\n") != std::string::npos);

  const auto show = run({"catalog", "show", "A1", "--alpha", "3", "--beta", "3", "--order", "6"});
  CHECK(show.code == 0);
  CHECK(show.out == "alpha_3 = q^5 + q^7\n1/(q)_6 = 1 + q + 2*q^2 + 3*q^3 + O(q^(7/2))\n");

  const auto exported = run({"catalog", "export", "delta:1"});
  CHECK(exported.code == 0);
  CHECK(exported.out.rfind("{\n  \"name\": \"delta:1\",\n  \"kind\": \"binomial\",\n  \"ell\": 1,", 0) == 0);

  CHECK(run({"catalog", "show", "nope"}).code == qbailey::exit_usage);
}

TEST_CASE("verify exit codes") {
  CHECK(run({"verify", "cor1", "--pair", "A1-trinomial:0", "--order", "20"}).code == qbailey::exit_pass);
  CHECK(run({"verify", "pair", "--pair", "builtin:A1", "--Lmax", "4", "--order", "30"}).code == qbailey::exit_pass);

  const auto printed = run({"verify", "tripair", "--pair", "A1-trinomial-as-printed:0", "--Lmax", "3", "--order", "20"});
  CHECK(printed.code == qbailey::exit_fail);
  CHECK(printed.out ==
        "verify tripair  pair=A1-trinomial-as-printed:0  order=20\n"
        "  index 0: pass\n"
        "  index 1: fail (first mismatch at t^2: lhs 0, rhs -1)\n"
        "  index 2: fail (first mismatch at t^2: lhs 1, rhs 2)\n"
        "  index 3: fail (first mismatch at t^2: lhs 0, rhs -1)\n"
        "verdict: fail\n");

  CHECK(run({"verify", "cor3", "--pair", "A1"}).code == qbailey::exit_usage);
  CHECK(run({"verify", "cor1", "--pair", "no-such-pair"}).code == qbailey::exit_usage);
  CHECK(run({"bogus"}).code == qbailey::exit_usage);
  CHECK(run({"verify", "tripair", "--pair", "file:" + kFixture, "--n", "0", "--Lmax", "3", "--order", "20"}).code ==
        qbailey::exit_insufficient_order);
}

TEST_CASE("binomial sources need n for trinomial checks") {
  CHECK(run({"verify", "tripair", "--pair", "A1", "--Lmax", "3", "--order", "20"}).code == qbailey::exit_usage);
  CHECK(run({"verify", "tripair", "--pair", "A1", "--n", "1", "--Lmax", "3", "--order", "20"}).code ==
        qbailey::exit_pass);
}

TEST_CASE("json output is byte-stable") {
  const std::vector<std::string> args{"verify", "ab-lemma", "--pair", "A1-trinomial:1", "--M", "2",
                                      "--order", "30", "--format", "json"};
  const auto first = run(args);
  const auto second = run(args);
  CHECK(first.code == 0);
  CHECK(first.out == second.out);
  CHECK(first.out.find("\"verdict\": \"pass\"") != std::string::npos);
  CHECK(first.out.find("timing_ms") == std::string::npos);

  const auto cor1 = run({"verify", "cor1", "--pair", "A1-trinomial:0", "--order", "20", "--format", "json"});
  CHECK(cor1.out ==
        "{\n  \"command\": \"verify\",\n  \"config\": {\n    \"identity\": \"cor1\",\n    \"pair\": \"A1-trinomial:0\",\n"
        "    \"order\": 20,\n    \"L_cap\": 2000\n  },\n  \"verdict\": \"pass\",\n  \"checks\": [\n    {\n"
        "      \"index\": 0,\n      \"status\": \"pass\"\n    }\n  ]\n}\n");
}

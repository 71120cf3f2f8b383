#include <doctest.h>
#include <json.hpp>

#include <cstdlib>
#include <sstream>

#include "sturm/cli.hpp"
#include "sturm/error.hpp"
#include "sturm/ostrowski.hpp"

using namespace sturm;

namespace {

struct Outcome {
  int status = 0;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int status = cli::run(args, out, err);
  return {status, out.str(), err.str()};
}

nlohmann::json run_json(std::vector<std::string> args) {
  args.push_back("--format");
  args.push_back("json");
  const Outcome o = run(args);
  REQUIRE(o.status == 0);
  return nlohmann::json::parse(o.out);
}

}  // namespace

TEST_CASE("worked examples") {
  CHECK(run({"generate", "characteristic", "--d", "1,(1)", "--length", "8", "--alphabet", "ab"})
            .out == "abaababa\n");
  CHECK(run({"ostrowski", "encode", "--d", "1,(1)", "--n", "14"}).out == "100001\n");
  CHECK(run({"count", "sturmian", "--n", "4"}).out == "14\n");
  CHECK(run({"generate", "standard", "--d", "fib", "--n", "4", "--alphabet", "ab"}).out ==
        "abaababa\n");
  CHECK(run({"generate", "central", "--d", "fib", "--n", "4", "--alphabet", "ab"}).out ==
        "abaababaaba\n");
  CHECK(run({"generate", "standard", "--d", "fib", "--n", "-1"}).out == "1\n");
  CHECK(run({"ostrowski", "decode", "--d", "fib", "--digits", "1300"}).out == "14\n");
  CHECK(run({"ostrowski", "legal", "--d", "fib", "--digits", "1300"}).out == "false\n");
  CHECK(run({"ostrowski", "valid", "--d", "fib", "--digits", "1300"}).out == "true\n");
  CHECK(run({"pal", "length", "--word", "abaabb"}).out == "3\n");
  CHECK(run({"pal", "starting-at", "--word", "abaababa", "--pos", "0"}).out == "1\n3\n6\n");
  CHECK(run({"pal", "rich", "--word", "aababbaa"}).out == "8 false\n");
  CHECK(run({"generate", "mechanical", "--sigma", "(3-sqrt(5))/2", "--rho", "(3-sqrt(5))/2",
             "--length", "8", "--alphabet", "ab"})
            .out == "abaababa\n");
}

TEST_CASE("options may follow the command") {
  const Outcome before = run({"--alphabet", "ab", "generate", "characteristic", "--d", "(2)",
                              "--length", "10"});
  const Outcome after = run({"generate", "characteristic", "--d", "(2)", "--length", "10",
                             "--alphabet", "ab"});
  CHECK(before.status == 0);
  CHECK(before.out == after.out);
  CHECK(after.out == "aabaabaaab\n");
}

TEST_CASE("csv tables carry a header row") {
  const Outcome o = run({"count", "rotation-faces", "--from", "1", "--n", "3", "--format", "csv"});
  CHECK(o.status == 0);
  // f(1) = 2 + 2 + 2, f(2) = 2 + 8 + 2*(2 + 1), f(3) = 2 + 20 + 2*(3 + 2 + 2)
  CHECK(o.out == "n,f\n1,6\n2,16\n3,36\n");
}

TEST_CASE("json output is versioned and echoes canonical specs") {
  const auto doc = run_json({"ostrowski", "enumerate", "--d", "1,1,(1)", "--n", "14"});
  CHECK(doc["schema"] == 1);
  CHECK(doc["command"] == "ostrowski enumerate");
  CHECK(doc["params"]["d"] == "(1)");
  CHECK(doc["rows"].size() == 6);
  // The echoed spec parses back to itself.
  const auto again = run_json({"ostrowski", "enumerate", "--d", doc["params"]["d"], "--n", "14"});
  CHECK(again == doc);

  const auto real = run_json({"generate", "rotation", "--alpha", "sqrt(2)-1", "--rho", "1/3",
                              "--sigma", "1/sqrt(7)", "--length", "9"});
  CHECK(real["rows"][0]["word"] == "010010101");
  CHECK(run_json({"generate", "rotation", "--alpha", real["params"]["alpha"], "--rho",
                  real["params"]["rho"], "--sigma", real["params"]["sigma"], "--length", "9"}) ==
        real);
}

TEST_CASE("output does not depend on the worker count") {
  const std::vector<std::vector<std::string>> invocations = {
      {"count", "balanced", "--from", "0", "--n", "14"},
      {"count", "rotation-words", "--sigma", "sqrt(7)/7", "--from", "1", "--n", "9"},
      {"verify", "balanced-vs-formula", "--n-max", "12"},
  };
  for (const auto& base : invocations) {
    for (const char* format : {"text", "csv", "json"}) {
      std::vector<std::string> args = base;
      args.insert(args.end(), {"--format", format, "--jobs", "1"});
      const Outcome one = run(args);
      for (const char* jobs : {"2", "3", "8", "0"}) {
        args.back() = jobs;
        const Outcome many = run(args);
        CHECK(many.status == one.status);
        CHECK(many.out == one.out);
      }
    }
  }
}

TEST_CASE("usage errors name the flag and exit with 1") {
  Outcome o = run({"ostrowski", "encode", "--d", "1,x", "--n", "3"});
  CHECK(o.status == 1);
  CHECK(o.err.find("--d") != std::string::npos);
  CHECK(o.out.empty());

  o = run({"generate", "mechanical", "--sigma", "sqrt(", "--length", "3"});
  CHECK(o.status == 1);
  CHECK(o.err.find("--sigma") != std::string::npos);

  o = run({"ostrowski", "encode", "--d", "fib", "--n", "-3"});
  CHECK(o.status == 1);
  CHECK(o.err.find("--n") != std::string::npos);

  o = run({"ostrowski", "decode", "--d", "fib", "--digits", "1x"});
  CHECK(o.status == 1);
  CHECK(o.err.find("--digits") != std::string::npos);

  o = run({"count", "sturmian", "--n", "4", "--bogus"});
  CHECK(o.status == 1);
  CHECK(o.err.find("--bogus") != std::string::npos);

  o = run({"count", "sturmian"});
  CHECK(o.status == 1);
  CHECK(o.err.find("--n") != std::string::npos);

  o = run({"count", "sturmian", "--n", "4", "--format", "xml"});
  CHECK(o.status == 1);
  CHECK(o.err.find("--format") != std::string::npos);

  o = run({"count", "sturmian", "--n", "4", "--from", "9"});
  CHECK(o.status == 1);
  CHECK(o.err.find("--from") != std::string::npos);

  o = run({"verify", "rotation-formula", "--sigma", "sqrt(2)-1", "--n-max", "9"});
  CHECK(o.status == 1);
  CHECK(o.err.find("--sigma") != std::string::npos);

  CHECK(run({}).status == 1);
  CHECK(run({"count"}).status == 1);
  CHECK(run({"frobnicate"}).status == 1);
}

TEST_CASE("help exits with 0") {
  const Outcome o = run({"--help"});
  CHECK(o.status == 0);
  CHECK(o.out.find("verify") != std::string::npos);
  CHECK(run({"ostrowski", "encode", "--help"}).status == 0);
}

TEST_CASE("verify commands report pass and fail") {
  Outcome o = run({"verify", "h-pattern", "--d", "fib", "--n-max", "20"});
  CHECK(o.status == 0);
  CHECK(o.out.rfind("PASS: 20 lengths, 0 failed\n") != std::string::npos);

  // The proposition allows gaps up to 3 and the chain reaches 3, so a bound of 2 must fail.
  o = run({"verify", "zd", "--d", "1,1,1,1,8,(1)", "--n-max", "101", "--bound", "2"});
  CHECK(o.status == 2);
  CHECK(o.out.find("FAIL:") != std::string::npos);

  const auto zd = run_json({"verify", "zd", "--d", "1,1,1,1,8,(1)", "--n-max", "101"});
  CHECK(zd["pass"] == true);
  CHECK(zd["max_gap"] == 3);
  CHECK(zd["rows"][101]["gap"] == 3);

  o = run({"verify", "zd", "--d", "fib", "--n-max", "20", "--bound", "0", "--format", "csv"});
  CHECK(o.status == 2);
  CHECK(o.out.rfind("n,gap,ok\n", 0) == 0);
  CHECK(o.err.find("FAIL:") != std::string::npos);

  const auto hard = run_json({"verify", "hard-prefix", "--d", "8,8,1,(1)", "--q", "1"});
  CHECK(hard["pass"] == true);
  CHECK(hard["rows"][0]["n"] == 40);
}

TEST_CASE("tpr records carry the witness fields") {
  const auto doc = run_json({"verify", "tpr", "--d", "fib", "--max-p2", "13"});
  CHECK(doc["pass"] == true);
  CHECK(doc["failures"] == 0);
  bool found = false;
  for (const auto& record : doc["rows"]) {
    for (const char* key : {"p1", "p2", "rep_p1", "m", "y_m", "rep_p2", "fallback_used"}) {
      CHECK(record.contains(key));
    }
    const DirectiveSequence fib = DirectiveSequence::fibonacci();
    CHECK(decode(OstrowskiRep::parse(record["rep_p1"].get<std::string>(), fib)) ==
          record["p1"].get<std::uint64_t>());
    CHECK(decode(OstrowskiRep::parse(record["rep_p2"].get<std::string>(), fib)) ==
          record["p2"].get<std::uint64_t>());
    if (record["p1"] == 12 && record["p2"] == 13) {
      found = true;
      CHECK(record["m"] == 1);
      CHECK(record["y_m"] == 1);
      CHECK(record["rep_p2"] == "10110");
    }
  }
  CHECK(found);
}

TEST_CASE("caps") {
  const cli::Caps defaults;
  const cli::Caps caps = cli::Caps::parse("balanced=30,ostrowski=7");
  CHECK(caps.balanced == 30);
  CHECK(caps.ostrowski == 7);
  CHECK(caps.rotation == defaults.rotation);
  CHECK(caps.profile == defaults.profile);
  CHECK(cli::Caps::parse("").balanced == defaults.balanced);
  CHECK_THROWS_AS(cli::Caps::parse("balanced=0"), InvalidArgument);
  CHECK_THROWS_AS(cli::Caps::parse("balanced=-1"), InvalidArgument);
  CHECK_THROWS_AS(cli::Caps::parse("speed=3"), InvalidArgument);
  CHECK_THROWS_AS(cli::Caps::parse("balanced"), InvalidArgument);

  ::setenv("STURM_CAP", "balanced=8", 1);
  Outcome o = run({"count", "balanced", "--n", "9"});
  CHECK(o.status == 1);
  CHECK(o.err.find("refused") != std::string::npos);
  o = run({"count", "balanced", "--n", "8"});
  CHECK(o.status == 0);
  CHECK(o.out == "76\n");
  ::setenv("STURM_CAP", "ostrowski=5", 1);
  CHECK(run({"ostrowski", "enumerate", "--d", "fib", "--n", "100"}).status == 1);
  ::setenv("STURM_CAP", "bogus=5", 1);
  o = run({"count", "sturmian", "--n", "4"});
  CHECK(o.status == 1);
  CHECK(o.err.find("STURM_CAP") != std::string::npos);
  ::unsetenv("STURM_CAP");
}

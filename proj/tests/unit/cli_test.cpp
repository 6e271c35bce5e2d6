#include <sstream>

#include "cli.hpp"
#include "doctest.h"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = subfib::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

bool contains(const std::string& s, const std::string& part) { return s.find(part) != std::string::npos; }

}  // namespace

TEST_CASE("classify and solve") {
  const Result c = run({"classify", "--start", "0,1"});
  CHECK(c.code == 0);
  CHECK(contains(c.out, "class: 18-cycle\n"));
  CHECK(c.err.empty());

  const Result s = run({"solve", "--signature", "7,1,2,1,5,2,2"});
  CHECK(s.code == 0);
  CHECK(s.out == "candidate: 13,51,32,83,23,53,38\nFails: 38,13 must be followed by 17, not 51\n");
}

TEST_CASE("census csv") {
  const Result r = run({"census", "--min", "1", "--max", "10", "--format", "csv"});
  CHECK(r.code == 0);
  CHECK(r.out == "lo,hi,class,count\n1,10,trivial,14\n1,10,18,63\n1,10,136,23\n");
}

TEST_CASE("other subcommands") {
  CHECK(run({"generate", "--start", "5,15", "--steps", "4"}).out == "5,15,10,5,5,5\n");
  CHECK(run({"generate", "--start", "3,7", "--steps", "2", "--policy", "fixed:5"}).out == "3,7,2,9\n");
  CHECK(contains(run({"predecessors", "--node", "89,45"}).out, "even links: 46\n"));
  CHECK(contains(run({"graph", "--start", "0,1"}).out, "\"13,61\" -> \"89,45\" [label=\"6\"];"));
  CHECK(contains(run({"graph", "--start", "0,1;151,227", "--format", "json"}).out, "\"arcs\""));
  CHECK(contains(run({"signature", "--cycle", "127,509,318,827,229,528,757,257,507,382"}).out,
                 "signature: 7,1,2,1,5,2,1,5,2,2\nconfiguration: 3,3,4\n"));
  CHECK(contains(run({"exhaust", "--length", "6"}).out, "valid: 0\n"));
  CHECK(contains(run({"registry", "--id", "56"}).out, "configuration:"));
  CHECK(run({"registry"}).out.find("136-cycle") != std::string::npos);
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == 1);
  CHECK(run({"frobnicate"}).code == 1);
  CHECK(run({"classify"}).code == 1);
  const Result bad_number = run({"classify", "--start", "1,x"});
  CHECK(bad_number.code == 1);
  CHECK(bad_number.out.empty());
  CHECK(contains(bad_number.err, "malformed number"));
  CHECK(run({"census", "--format", "xml"}).code == 1);
  CHECK(run({"graph", "--start", "0,1", "--format", "csv"}).code == 1);
  CHECK(run({"predecessors", "--node", "4,5"}).code == 1);
  CHECK(run({"registry", "--id", "7"}).code == 1);
  CHECK(run({"generate", "--start", "1,2", "--policy", "fixed:4"}).code == 1);
  CHECK(run({"classify", "--start", "1,2", "--max-steps", "5"}).code == 2);
  CHECK(run({"generate", "--start", "9000000000000000000,9000000000000000000", "--steps", "1"}).code == 2);
  CHECK(run({"classify", "--start", "99999999999999999999,1"}).code == 1);
}

TEST_CASE("help documents defaults") {
  const Result top = run({"--help"});
  CHECK(top.code == 0);
  CHECK(contains(top.out, "SUBFIB_SIEVE_BOUND"));
  for (const char* sub : {"generate", "classify", "census", "predecessors", "graph", "signature", "solve", "exhaust",
                          "registry"}) {
    const Result h = run({sub, "--help"});
    CHECK(h.code == 0);
    CHECK(contains(h.out, "10^7"));
  }
  CHECK(contains(run({"classify", "--help"}).out, "10^6"));
  CHECK(contains(run({"census", "--help"}).out, "10^6"));
  CHECK(contains(run({"exhaust", "--help"}).out, "1000"));
}

TEST_CASE("outputs are byte-stable") {
  const std::vector<std::vector<std::string>> commands{
      {"classify", "--start", "151,227", "--format", "json"},
      {"census", "--min", "1", "--max", "30", "--workers", "4", "--format", "json"},
      {"predecessors", "--node", "13,61", "--format", "json"},
      {"graph", "--start", "0,1;5,23"},
      {"exhaust", "--length", "9", "--prime-bound", "50", "--workers", "4", "--format", "json"},
      {"registry", "--format", "json"},
  };
  for (const auto& cmd : commands) {
    const Result a = run(cmd);
    const Result b = run(cmd);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
  }
  CHECK(run({"census", "--min", "1", "--max", "40", "--workers", "1"}).out ==
        run({"census", "--min", "1", "--max", "40", "--workers", "8"}).out);
}

#include "doctest.h"
#include "json.hpp"
#include "subfib/error.hpp"
#include "subfib/serialize.hpp"

using namespace subfib;
using json = nlohmann::json;

TEST_CASE("format names") {
  CHECK(parse_format("csv") == Format::Csv);
  CHECK(parse_format("dot") == Format::Dot);
  CHECK(format_name(Format::Json) == "json");
  CHECK_THROWS_AS(parse_format("xml"), DomainError);
  CHECK_THROWS_AS(parse_format("CSV"), DomainError);
}

TEST_CASE("census csv and json") {
  const CensusReport r = census(1, 10);
  CHECK(export_census(r, Format::Csv) == "lo,hi,class,count\n1,10,trivial,14\n1,10,18,63\n1,10,136,23\n");
  const json j = json::parse(export_census(r, Format::Json));
  CHECK(j["counts"]["18"] == 63);
  CHECK(j["counts"]["trivial"] == 14);
  CHECK(j["pairs"] == 100);
  CHECK(j["unknown_cycles"].empty());
  CHECK_THROWS_AS(export_census(r, Format::Dot), DomainError);
}

TEST_CASE("graph dot and json") {
  const NodeGraph g = build_graph({{0, 1}});
  const std::string dot = export_graph(g, Format::Dot);
  CHECK(dot.rfind("digraph subfib {\n", 0) == 0);
  CHECK(dot.find("\"13,61\" -> \"89,45\" [label=\"6\"];") != std::string::npos);
  CHECK(dot.back() == '\n');
  CHECK(export_graph(NodeGraph{}, Format::Dot) == "digraph subfib {\n}\n");
  const json j = json::parse(export_graph(g, Format::Json));
  CHECK(j["vertices"].size() == 14);
  CHECK(j["arcs"].size() == 14);
  CHECK_THROWS_AS(export_graph(g, Format::Csv), DomainError);
}

TEST_CASE("predecessors json") {
  const json j = json::parse(predecessors_json(direct_predecessors(Node::make(89, 45))));
  CHECK(j["target"] == json::array({89, 45}));
  CHECK(j["even_links"] == json::array({46}));
  CHECK(j["predecessors"].size() == 5);
}

TEST_CASE("exhaust json schema") {
  const json j = json::parse(exhaust_json(exhaust_cycles(6)));
  CHECK(j["length"] == 6);
  CHECK(j["prime_bound"] == 1000);
  REQUIRE(j["configurations"].size() == 2);
  const json& one = j["configurations"][0];
  CHECK(one["lengths"] == json::array({6}));
  CHECK(one.contains("discarded"));
  const json& two = j["configurations"][1];
  CHECK(two["exact"] == true);
  std::size_t nulls = 0;
  for (const json& c : two["cases"]) {
    CHECK(c.contains("divisors"));
    CHECK(c.contains("failure_reasons"));
    CHECK(c["valid"] == false);
    nulls += c["candidate"].is_null();
  }
  CHECK(nulls == 2);
}

TEST_CASE("trajectory, solve and registry json") {
  const json t = json::parse(trajectory_json(classify({0, 1})));
  CHECK(t["class"] == "18-cycle");
  CHECK(t["tail_length"] == 38);
  CHECK(t["entry_node"] == json::array({13, 61}));

  const Signature sig{{7, 1, 2, 1, 5, 2, 2}};
  const json s = json::parse(solve_json(solve_signature(sig), sig));
  CHECK(s["outcome"] == "candidate");
  CHECK(s["candidate"] == json::array({13, 51, 32, 83, 23, 53, 38}));

  std::vector<const KnownCycle*> all;
  for (const KnownCycle& k : registry()) all.push_back(&k);
  const json r = json::parse(registry_json(all));
  CHECK(r.size() == 6);
  CHECK(r[2]["configuration"] == json::array({6, 4, 5, 3}));
}

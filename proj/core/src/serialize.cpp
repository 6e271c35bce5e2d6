#include "subfib/serialize.hpp"

#include <sstream>

#include "json.hpp"
#include "subfib/error.hpp"

namespace subfib {
namespace {

using json = nlohmann::ordered_json;

json node_json(const Node& n) { return json::array({n.a, n.b}); }

json divisors_json(const DivisorAssignment& d) {
  json out = json::array();
  for (const NodeDivisors& nd : d) out.push_back(json::array({nd.p, nd.q}));
  return out;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string quoted(const Node& n) { return "\"" + to_string(n) + "\""; }

}  // namespace

Format parse_format(std::string_view name) {
  if (name == "text") return Format::Text;
  if (name == "csv") return Format::Csv;
  if (name == "json") return Format::Json;
  if (name == "dot") return Format::Dot;
  throw DomainError("unsupported format '" + std::string(name) + "'");
}

std::string_view format_name(Format f) {
  switch (f) {
    case Format::Text:
      return "text";
    case Format::Csv:
      return "csv";
    case Format::Json:
      return "json";
    case Format::Dot:
      return "dot";
  }
  return "text";
}

std::string export_census(const CensusReport& report, Format format) {
  if (format == Format::Csv) {
    std::ostringstream out;
    out << "lo,hi,class,count\n";
    for (const auto& [label, count] : report.rows()) {
      out << report.lo << ',' << report.hi << ',' << label << ',' << count << '\n';
    }
    return out.str();
  }
  if (format == Format::Json) {
    json j;
    j["lo"] = report.lo;
    j["hi"] = report.hi;
    j["pairs"] = report.total();
    json counts = json::object();
    counts["trivial"] = report.trivial;
    for (const auto& [id, count] : report.known) counts[std::to_string(id)] = count;
    counts["unknown"] = report.unknown;
    counts["unresolved"] = report.unresolved;
    j["counts"] = counts;
    json unknown = json::array();
    for (const Cycle& c : report.unknown_cycles) unknown.push_back(c.terms());
    j["unknown_cycles"] = unknown;
    json unresolved = json::array();
    for (const auto& [a, b] : report.unresolved_pairs) unresolved.push_back(json::array({a, b}));
    j["unresolved_pairs"] = unresolved;
    return dump(j);
  }
  throw DomainError("census cannot be exported as " + std::string(format_name(format)));
}

std::string export_graph(const NodeGraph& graph, Format format) {
  if (format == Format::Dot) {
    std::ostringstream out;
    out << "digraph subfib {\n";
    for (const Node& v : graph.vertices) out << "  " << quoted(v) << ";\n";
    for (const Node& v : graph.vertices) {
      auto it = graph.arcs.find(v);
      if (it == graph.arcs.end()) continue;
      out << "  " << quoted(v) << " -> " << quoted(it->second.head) << " [label=\"" << it->second.weight << "\"];\n";
    }
    out << "}\n";
    return out.str();
  }
  if (format == Format::Json) {
    json j;
    json vertices = json::array();
    for (const Node& v : graph.vertices) vertices.push_back(node_json(v));
    j["vertices"] = vertices;
    json arcs = json::array();
    for (const Node& v : graph.vertices) {
      auto it = graph.arcs.find(v);
      if (it == graph.arcs.end()) continue;
      json arc;
      arc["tail"] = node_json(v);
      arc["head"] = node_json(it->second.head);
      arc["weight"] = it->second.weight;
      arcs.push_back(arc);
    }
    j["arcs"] = arcs;
    json skipped = json::array();
    for (const auto& [a, b] : graph.skipped) skipped.push_back(json::array({a, b}));
    j["skipped_trivial_starts"] = skipped;
    return dump(j);
  }
  throw DomainError("graph cannot be exported as " + std::string(format_name(format)));
}

std::string predecessors_json(const PredecessorSet& set) {
  json j;
  j["target"] = node_json(set.target);
  j["even_links"] = set.even_links;
  json links = json::array();
  for (const LinkCandidate& c : set.link_candidates) {
    links.push_back(json{{"q", c.q}, {"even_link", c.even_link}, {"kept", c.kept}});
  }
  j["link_candidates"] = links;
  json branches = json::array();
  for (const PredecessorBranch& b : set.branches) {
    json jb;
    jb["even_link"] = b.even_link;
    jb["q"] = b.q;
    jb["p"] = b.p;
    jb["last_odd"] = b.last_odd;
    json nodes = json::array();
    for (const Node& n : b.nodes) nodes.push_back(node_json(n));
    jb["nodes"] = nodes;
    json skipped = json::array();
    for (const auto& [u, v] : b.non_coprime) skipped.push_back(json::array({u, v}));
    jb["non_coprime"] = skipped;
    branches.push_back(jb);
  }
  j["branches"] = branches;
  json preds = json::array();
  for (const Node& n : set.predecessors) preds.push_back(node_json(n));
  j["predecessors"] = preds;
  return dump(j);
}

std::string exhaust_json(const ExhaustReport& report) {
  json j;
  j["length"] = report.length;
  j["prime_bound"] = report.prime_bound;
  j["valid_count"] = report.valid_count();
  json configs = json::array();
  for (const ConfigurationReport& cfg : report.configurations) {
    json jc;
    jc["lengths"] = cfg.configuration.lengths();
    jc["exact"] = cfg.exact;
    if (cfg.discarded) jc["discarded"] = *cfg.discarded;
    json cases = json::array();
    for (const ExhaustCase& c : cfg.cases) {
      json jcase;
      jcase["divisors"] = divisors_json(c.divisors);
      jcase["signature"] = c.signature.divisors;
      jcase["candidate"] = c.candidate ? json(c.candidate->terms) : json(nullptr);
      jcase["valid"] = c.valid();
      jcase["failure_reasons"] = c.failure_reasons;
      cases.push_back(jcase);
    }
    jc["cases"] = cases;
    configs.push_back(jc);
  }
  j["configurations"] = configs;
  return dump(j);
}

std::string trajectory_json(const Trajectory& t) {
  json j;
  j["start"] = json::array({t.start.first, t.start.second});
  j["tail_length"] = t.tail_length;
  j["cycle_length"] = t.cycle.length();
  j["class"] = to_string(t.cycle.cycle_class());
  j["cycle"] = t.cycle.terms();
  j["entry_node"] = t.entry_node ? json::array({t.entry_node->first, t.entry_node->second}) : json(nullptr);
  j["max_term"] = t.cycle.max_term();
  j["min_term"] = t.cycle.min_term();
  return dump(j);
}

std::string solve_json(const SolveOutcome& outcome, const Signature& signature) {
  json j;
  j["signature"] = signature.divisors;
  j["nullity"] = outcome.nullity;
  switch (outcome.kind) {
    case SolveOutcome::Kind::Candidate:
      j["outcome"] = "candidate";
      break;
    case SolveOutcome::Kind::NoSolution:
      j["outcome"] = "no_solution";
      break;
    case SolveOutcome::Kind::Degenerate:
      j["outcome"] = "degenerate";
      break;
  }
  if (outcome.candidate) {
    j["candidate"] = outcome.candidate->terms;
    j["valid"] = outcome.candidate->verdict.valid();
    j["failure_reasons"] = outcome.candidate->verdict.reasons;
  } else {
    j["candidate"] = nullptr;
    j["detail"] = outcome.detail;
  }
  return dump(j);
}

std::string registry_json(const std::vector<const KnownCycle*>& cycles) {
  json out = json::array();
  for (const KnownCycle* k : cycles) {
    json j;
    j["id"] = k->id;
    j["length"] = k->cycle.length();
    j["terms"] = k->cycle.terms();
    j["signature"] = k->signature.divisors;
    j["configuration"] = k->runs.configuration;
    j["divisors"] = divisors_json(k->runs.divisors);
    json starts = json::array();
    for (const auto& [a, b] : k->starts) starts.push_back(json::array({a, b}));
    j["starts"] = starts;
    j["entry_node"] = node_json(k->entry_node);
    j["max_term"] = k->cycle.max_term();
    j["min_term"] = k->cycle.min_term();
    out.push_back(j);
  }
  return dump(out);
}

}  // namespace subfib

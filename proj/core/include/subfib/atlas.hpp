#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "subfib/engine.hpp"
#include "subfib/runs.hpp"

namespace subfib {

inline constexpr Term kDefaultMemoCap = Term{1} << 20;

struct CensusOptions {
  unsigned workers = 1;
  bool memoize = true;
  // Only pairs with both components <= memo_cap are memoised.
  Term memo_cap = kDefaultMemoCap;
  std::uint64_t max_steps = kDefaultMaxSteps;
};

// Terminal-cycle counts over all ordered starting pairs in [lo, hi]^2.
struct CensusReport {
  Term lo = 1;
  Term hi = 1;
  std::uint64_t trivial = 0;
  std::map<Term, std::uint64_t> known;  // registry id -> count, all ids present
  std::uint64_t unknown = 0;
  std::uint64_t unresolved = 0;
  std::vector<Cycle> unknown_cycles;       // canonical, deduplicated, sorted
  std::vector<TermPair> unresolved_pairs;  // sorted

  std::uint64_t total() const;
  // (class label, count) for every nonzero class: "trivial", known ids in
  // ascending order, "unknown", "unresolved".
  std::vector<std::pair<std::string, std::uint64_t>> rows() const;

  bool operator==(const CensusReport&) const = default;
};

CensusReport census(Term lo, Term hi, const CensusOptions& options = {});

// Predecessors reached through one choice of even link t and divisor p.
struct PredecessorBranch {
  Term even_link = 0;
  Term q = 1;     // t + a = q·b
  Term p = 1;     // x + t = p·a
  Term last_odd = 0;  // x, the odd term before t
  std::vector<Node> nodes;            // in forward order
  std::vector<TermPair> non_coprime;  // chain pairs skipped for sharing a factor
};

struct LinkCandidate {
  Term q = 1;
  Term even_link = 0;  // q·b - a
  bool kept = false;   // positive, even, and steps forward to b
};

struct PredecessorSet {
  Node target;
  std::vector<LinkCandidate> link_candidates;
  std::vector<Term> even_links;  // ascending
  std::vector<PredecessorBranch> branches;
  std::vector<Node> predecessors;  // all branches, in branch order

  // The single even link, or 0 when there are none or several.
  Term even_link() const { return even_links.size() == 1 ? even_links.front() : 0; }
};

// Every node whose run leads directly into `target`, found by walking the
// recurrence backwards and confirming each step forwards.
PredecessorSet direct_predecessors(const Node& target);

struct Arc {
  Node head;
  int weight = 0;  // run length of the tail node

  bool operator==(const Arc&) const = default;
};

struct NodeGraph {
  std::vector<Node> vertices;  // first-seen order
  std::map<Node, Arc> arcs;    // at most one outgoing arc per vertex
  std::vector<TermPair> skipped;  // starts that end in a trivial cycle

  bool contains(const Node& n) const;
};

// Union of the node paths of all starts, followed once around their cycles.
NodeGraph build_graph(const std::vector<TermPair>& starts, std::uint64_t max_steps = kDefaultMaxSteps);

}  // namespace subfib

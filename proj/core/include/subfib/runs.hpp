#pragma once

#include <compare>
#include <span>
#include <vector>

#include "subfib/engine.hpp"

namespace subfib {

// Ordered pair of positive, odd, coprime terms that starts a run.
struct Node {
  Term a = 0;
  Term b = 0;

  // Throws DomainError unless a, b are positive, odd and coprime.
  static Node make(Term a, Term b);
  static bool is_valid(Term a, Term b);

  auto operator<=>(const Node&) const = default;
};

std::string to_string(const Node& n);

// Odd terms generated by a node followed by the single even term that ends
// them. For runs produced by averaging, b = a + 2^(k-2)·d with d odd and
// terms[i] = a + 2^(k-1-i)·J_i·d.
struct Run {
  Node node;
  int k = 0;
  // (b - a) / 2^(k-2). Only meaningful when regular() holds.
  Term d = 0;
  std::vector<Term> terms;
  // Index of the node's first term in the list it was read from.
  std::size_t offset = 0;

  // True when every term after the node is the average of the previous two
  // (d odd). Runs inside cycles are always regular.
  bool regular() const;
};

// Run length implied by a node: 2 + the 2-adic valuation of b - a.
// Throws DomainError when a == b.
int run_length(const Node& node);

// Closed-form run for `node` of length k. Throws DomainError unless
// b - a = 2^(k-2)·d with d odd (positivity follows from b > 0).
Run run_from_node(const Node& node, int k);

// Nodes and runs of a finite term list, in order. A node is a coprime odd
// positive pair at the start of the list or right after an even term, and
// its run must finish (reach an even term) inside the list.
std::vector<Run> decompose_runs(std::span<const Term> terms);

struct NodeDivisors {
  Term p = 1;  // divisor of the node's first term
  Term q = 1;  // divisor of the node's second term

  auto operator<=>(const NodeDivisors&) const = default;
};

struct CycleRuns {
  std::vector<Run> runs;                 // in cycle order from the first node
  std::vector<int> configuration;        // k_1..k_n
  std::vector<NodeDivisors> divisors;    // (p_i, q_i) per run
};

// Splits a non-trivial cycle into runs, starting at the first node at or
// after the cycle's first term. Throws NotDecomposable when terms are not
// positive, consecutive terms share a factor, or evens are adjacent.
CycleRuns decompose_cycle(const Cycle& cycle);
CycleRuns decompose_cycle(std::span<const Term> cyclic_terms);

}  // namespace subfib

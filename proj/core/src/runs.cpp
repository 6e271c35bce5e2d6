#include "subfib/runs.hpp"

#include <bit>
#include <string>

#include "subfib/checked.hpp"
#include "subfib/error.hpp"
#include "subfib/jacobsthal.hpp"

namespace subfib {
namespace {

bool odd(Term v) { return (v & 1) != 0; }

std::size_t wrap(std::size_t i, std::size_t m) { return i % m; }

}  // namespace

bool Node::is_valid(Term a, Term b) { return a > 0 && b > 0 && odd(a) && odd(b) && gcd(a, b) == 1; }

Node Node::make(Term a, Term b) {
  if (!is_valid(a, b)) {
    throw DomainError("(" + std::to_string(a) + "," + std::to_string(b) +
                      ") is not a node: terms must be positive, odd and coprime");
  }
  return Node{a, b};
}

std::string to_string(const Node& n) { return std::to_string(n.a) + "," + std::to_string(n.b); }

bool Run::regular() const {
  if (k < 3 || static_cast<int>(terms.size()) != k || !odd(d)) return false;
  if (checked_sub(node.b, node.a) != checked_mul(checked_pow2<Term>(static_cast<unsigned>(k - 2)), d)) return false;
  for (int i = 2; i < k; ++i) {
    if (checked_mul<Term>(2, terms[i]) != checked_add(terms[i - 2], terms[i - 1])) return false;
  }
  return true;
}

int run_length(const Node& node) {
  const Term diff = checked_sub(node.b, node.a);
  if (diff == 0) throw DomainError("run_length: node terms are equal");
  const auto mag = diff < 0 ? std::uint64_t{0} - static_cast<std::uint64_t>(diff) : static_cast<std::uint64_t>(diff);
  return std::countr_zero(mag) + 2;
}

Run run_from_node(const Node& node, int k) {
  if (!Node::is_valid(node.a, node.b)) throw DomainError("run_from_node: invalid node " + to_string(node));
  if (k < 3) throw DomainError("run_from_node: run length must be >= 3");
  const Term diff = checked_sub(node.b, node.a);
  const Term scale = checked_pow2<Term>(static_cast<unsigned>(k - 2));
  if (diff % scale != 0 || !odd(diff / scale)) {
    throw DomainError("run_from_node: b - a = " + std::to_string(diff) + " is not 2^" + std::to_string(k - 2) +
                      " times an odd number");
  }
  Run run;
  run.node = node;
  run.k = k;
  run.d = diff / scale;
  run.terms.reserve(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    const Term step = checked_mul(checked_pow2<Term>(static_cast<unsigned>(k - 1 - i)), jacobsthal(i));
    run.terms.push_back(checked_add(node.a, checked_mul(step, run.d)));
  }
  return run;
}

std::vector<Run> decompose_runs(std::span<const Term> terms) {
  std::vector<Run> runs;
  const std::size_t n = terms.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (i > 0 && odd(terms[i - 1])) continue;
    if (!Node::is_valid(terms[i], terms[i + 1])) continue;
    std::size_t end = i + 2;
    while (end < n && odd(terms[end])) ++end;
    if (end == n) break;
    Run run;
    run.node = Node{terms[i], terms[i + 1]};
    run.k = static_cast<int>(end - i + 1);
    run.offset = i;
    run.terms.assign(terms.begin() + static_cast<std::ptrdiff_t>(i), terms.begin() + static_cast<std::ptrdiff_t>(end) + 1);
    const Term diff = checked_sub(run.node.b, run.node.a);
    if (run.k - 2 < 62) {
      const Term scale = Term{1} << (run.k - 2);
      if (diff % scale == 0) run.d = diff / scale;
    }
    runs.push_back(std::move(run));
    i = end;
  }
  return runs;
}

CycleRuns decompose_cycle(std::span<const Term> t) {
  const std::size_t m = t.size();
  if (m < 3) throw NotDecomposable("cycle has fewer than three terms");
  for (std::size_t i = 0; i < m; ++i) {
    if (t[i] <= 0) throw NotDecomposable("cycle term " + std::to_string(t[i]) + " is not positive");
    if (gcd(t[i], t[wrap(i + 1, m)]) != 1) {
      throw NotDecomposable("consecutive terms " + std::to_string(t[i]) + "," + std::to_string(t[wrap(i + 1, m)]) +
                            " are not coprime");
    }
    if (!odd(t[i]) && !odd(t[wrap(i + 1, m)])) throw NotDecomposable("adjacent even terms");
  }
  std::size_t start = m;
  for (std::size_t i = 0; i < m; ++i) {
    if (!odd(t[wrap(i + m - 1, m)]) && odd(t[i]) && odd(t[wrap(i + 1, m)])) {
      start = i;
      break;
    }
  }
  if (start == m) throw NotDecomposable("cycle has no node");

  const Signature sig = signature_of(t);
  CycleRuns out;
  std::size_t covered = 0;
  std::size_t pos = start;
  while (covered < m) {
    const Term a = t[pos];
    const Term b = t[wrap(pos + 1, m)];
    if (!odd(a) || !odd(b)) throw NotDecomposable("even term followed by a run shorter than three");
    std::size_t len = 2;
    while (odd(t[wrap(pos + len, m)])) ++len;
    ++len;  // terminating even
    Run run;
    run.node = Node{a, b};
    run.k = static_cast<int>(len);
    run.offset = pos;
    for (std::size_t j = 0; j < len; ++j) run.terms.push_back(t[wrap(pos + j, m)]);
    const Term diff = checked_sub(b, a);
    if (run.k - 2 < 62 && diff % (Term{1} << (run.k - 2)) == 0) run.d = diff / (Term{1} << (run.k - 2));
    if (!run.regular()) throw NotDecomposable("run from " + to_string(run.node) + " is not a run of averages");
    out.divisors.push_back(NodeDivisors{sig.divisors[pos], sig.divisors[wrap(pos + 1, m)]});
    out.configuration.push_back(run.k);
    out.runs.push_back(std::move(run));
    covered += len;
    pos = wrap(pos + len, m);
  }
  return out;
}

CycleRuns decompose_cycle(const Cycle& cycle) { return decompose_cycle(std::span<const Term>(cycle.terms())); }

}  // namespace subfib

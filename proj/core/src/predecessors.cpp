#include "subfib/atlas.hpp"

#include <algorithm>

#include "subfib/checked.hpp"
#include "subfib/primes.hpp"

namespace subfib {
namespace {

// Divisors that could have produced `value`: 1 (the sum was kept) and odd
// primes up to its smallest prime factor (so the sum m·value has m as its
// least prime), capped at `limit`. Forward steps decide which really work.
std::vector<Term> candidate_divisors(Term value, Term limit) {
  std::vector<Term> out{1};
  if (value < 2) return out;
  const auto spf = static_cast<Term>(smallest_prime_factor(static_cast<std::uint64_t>(value)));
  const Term top = std::min(spf, limit);
  for (Term m = 3; m <= top; m += 2) {
    if (is_prime(static_cast<std::uint64_t>(m))) out.push_back(m);
  }
  return out;
}

}  // namespace

PredecessorSet direct_predecessors(const Node& target) {
  const Node node = Node::make(target.a, target.b);
  const Term a = node.a;
  const Term b = node.b;
  PredecessorSet out;
  out.target = node;

  // t + a = q·b, t even and positive, and t, a must step to b.
  for (Term q : candidate_divisors(b, b)) {
    const Term t = checked_sub(checked_mul(q, b), a);
    const bool kept = t > 0 && (t & 1) == 0 && next_term(t, a) == b;
    out.link_candidates.push_back(LinkCandidate{q, t, kept});
    if (!kept) continue;
    out.even_links.push_back(t);

    // x + t = p·a with 0 < x < 2t so the term before x stays positive.
    for (Term p : candidate_divisors(a, checked_mul<Term>(3, t) / a + 1)) {
      const Term x = checked_sub(checked_mul(p, a), t);
      if (x <= 0 || x >= checked_mul<Term>(2, t) || (x & 1) == 0) continue;
      if (next_term(x, t) != a) continue;

      PredecessorBranch branch;
      branch.even_link = t;
      branch.q = q;
      branch.p = p;
      branch.last_odd = x;
      // Walk the run backwards: each earlier term is 2·(term after next)
      // minus the next term, confirmed by stepping forwards.
      std::vector<Term> chain{t, x};
      std::vector<TermPair> pairs;  // (earlier, later), backward order
      while (true) {
        const std::size_t n = chain.size();
        const Term prev = checked_sub(checked_mul<Term>(2, chain[n - 2]), chain[n - 1]);
        if (prev <= 0 || (prev & 1) == 0) break;
        if (next_term(prev, chain[n - 1]) != chain[n - 2]) break;
        chain.push_back(prev);
        pairs.emplace_back(prev, chain[n - 1]);
      }
      std::reverse(pairs.begin(), pairs.end());
      for (const auto& [u, v] : pairs) {
        if (gcd(u, v) == 1) {
          branch.nodes.push_back(Node{u, v});
        } else {
          branch.non_coprime.emplace_back(u, v);
        }
      }
      out.predecessors.insert(out.predecessors.end(), branch.nodes.begin(), branch.nodes.end());
      out.branches.push_back(std::move(branch));
    }
  }
  std::sort(out.even_links.begin(), out.even_links.end());
  out.even_links.erase(std::unique(out.even_links.begin(), out.even_links.end()), out.even_links.end());
  return out;
}

}  // namespace subfib

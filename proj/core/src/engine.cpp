#include "subfib/engine.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "subfib/checked.hpp"
#include "subfib/error.hpp"
#include "subfib/primes.hpp"
#include "subfib/registry.hpp"

namespace subfib {
namespace {

std::uint64_t magnitude(Term v) {
  return v < 0 ? std::uint64_t{0} - static_cast<std::uint64_t>(v) : static_cast<std::uint64_t>(v);
}

struct PairHash {
  std::size_t operator()(const TermPair& p) const noexcept {
    const auto a = static_cast<std::uint64_t>(p.first);
    const auto b = static_cast<std::uint64_t>(p.second);
    return static_cast<std::size_t>((a * 0x9E3779B97F4A7C15ULL) ^ (b + 0x7F4A7C159E3779B9ULL + (a << 6) + (a >> 2)));
  }
};

bool is_odd(Term v) { return (v & 1) != 0; }

std::optional<TermPair> find_entry_node(const std::vector<Term>& cycle_in_order) {
  const std::size_t len = cycle_in_order.size();
  if (len < 2) return std::nullopt;
  for (std::size_t c = 0; c < len; ++c) {
    const Term a = cycle_in_order[c];
    const Term b = cycle_in_order[(c + 1) % len];
    const Term before = cycle_in_order[(c + len - 1) % len];
    if (a > 0 && b > 0 && is_odd(a) && is_odd(b) && !is_odd(before) && gcd(a, b) == 1) {
      return TermPair{a, b};
    }
  }
  return std::nullopt;
}

}  // namespace

StepPolicy StepPolicy::fixed_prime(Term p) {
  if (p < 3 || !is_prime(static_cast<std::uint64_t>(p))) {
    throw DomainError("fixed-prime policy requires an odd prime, got " + std::to_string(p));
  }
  return StepPolicy(Kind::FixedPrime, p);
}

Term gcd(Term a, Term b) {
  return static_cast<Term>(std::gcd(magnitude(a), magnitude(b)));
}

Term next_term(Term a, Term b, const StepPolicy& policy) {
  const Term sum = checked_add(a, b);
  if (policy.kind() == StepPolicy::Kind::FixedPrime) {
    if (sum != 0 && sum % policy.prime() == 0) return sum / policy.prime();
    return sum;
  }
  const std::uint64_t mag = magnitude(sum);
  if (mag <= 1) return sum;
  const std::uint64_t p = smallest_prime_factor(mag);
  if (p == mag) return sum;
  return sum / static_cast<Term>(p);
}

std::vector<Term> generate(TermPair start, std::uint64_t steps, const StepPolicy& policy) {
  std::vector<Term> terms;
  terms.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(steps, 1 << 20)) + 2);
  terms.push_back(start.first);
  terms.push_back(start.second);
  for (std::uint64_t i = 0; i < steps; ++i) {
    const std::size_t n = terms.size();
    terms.push_back(next_term(terms[n - 2], terms[n - 1], policy));
  }
  return terms;
}

std::string to_string(const CycleClass& c) {
  switch (c.kind) {
    case CycleKind::Trivial:
      return "trivial(" + std::to_string(c.value) + ")";
    case CycleKind::Known:
      return std::to_string(c.value) + "-cycle";
    case CycleKind::Unknown:
      break;
  }
  return "unknown";
}

std::size_t least_rotation(std::span<const Term> terms) {
  const std::size_t n = terms.size();
  std::size_t best = 0;
  for (std::size_t r = 1; r < n; ++r) {
    for (std::size_t i = 0; i < n; ++i) {
      const Term x = terms[(r + i) % n];
      const Term y = terms[(best + i) % n];
      if (x != y) {
        if (x < y) best = r;
        break;
      }
    }
  }
  return best;
}

std::vector<Term> canonical_rotation(std::span<const Term> terms) {
  std::vector<Term> out(terms.begin(), terms.end());
  std::rotate(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(least_rotation(terms)), out.end());
  return out;
}

Cycle::Cycle(std::span<const Term> terms) : terms_(canonical_rotation(terms)) {
  if (terms_.size() == 1) class_ = CycleClass{CycleKind::Trivial, terms_.front()};
}

Term Cycle::max_term() const { return *std::max_element(terms_.begin(), terms_.end()); }
Term Cycle::min_term() const { return *std::min_element(terms_.begin(), terms_.end()); }

Trajectory detect_cycle(TermPair start, std::uint64_t max_steps, const StepPolicy& policy) {
  Trajectory traj;
  traj.start = start;
  auto& terms = traj.terms;
  terms = {start.first, start.second};
  std::unordered_map<TermPair, std::size_t, PairHash> seen;
  seen.emplace(start, 0);
  for (std::uint64_t step = 0; step < max_steps; ++step) {
    const std::size_t n = terms.size();
    terms.push_back(next_term(terms[n - 2], terms[n - 1], policy));
    const std::size_t i = n - 1;
    const TermPair key{terms[i], terms[i + 1]};
    auto [it, inserted] = seen.emplace(key, i);
    if (inserted) continue;
    const std::size_t first = it->second;
    traj.tail_length = first;
    const std::vector<Term> in_order(terms.begin() + static_cast<std::ptrdiff_t>(first),
                                     terms.begin() + static_cast<std::ptrdiff_t>(i));
    traj.cycle = Cycle(in_order);
    traj.entry_node = find_entry_node(in_order);
    return traj;
  }
  throw NonterminationSuspected("no repeated pair within " + std::to_string(max_steps) + " steps from (" +
                                std::to_string(start.first) + "," + std::to_string(start.second) + ")");
}

Trajectory classify(TermPair start, std::uint64_t max_steps, const StepPolicy& policy) {
  Trajectory traj = detect_cycle(start, max_steps, policy);
  if (!traj.cycle.is_trivial() && policy.kind() == StepPolicy::Kind::Subprime) {
    if (const KnownCycle* known = find_known_cycle(traj.cycle.terms())) {
      traj.cycle.set_class(CycleClass{CycleKind::Known, known->id});
    }
  }
  return traj;
}

Shape shape_of(std::span<const Term> terms) {
  if (terms.empty()) throw DomainError("shape_of: empty term list");
  Shape shape;
  shape.parities.reserve(terms.size());
  for (Term t : terms) shape.parities.push_back(is_odd(t) ? 'O' : 'E');
  return shape;
}

Signature signature_of(std::span<const Term> t) {
  const std::size_t m = t.size();
  if (m == 0) throw DomainError("signature_of: empty term list");
  Signature sig;
  sig.divisors.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    const Term prev2 = t[(i + 2 * m - 2) % m];
    const Term prev1 = t[(i + m - 1) % m];
    const Term sum = checked_add(prev2, prev1);
    const Term cur = t[i];
    const std::uint64_t mag = magnitude(sum);
    auto fail = [&](const std::string& why) {
      throw InconsistentCycle(std::to_string(prev2) + "," + std::to_string(prev1) + " -> " + std::to_string(cur) +
                              ": " + why);
    };
    if (sum == cur) {
      if (mag > 1 && smallest_prime_factor(mag) != mag) fail("sum is composite but was not divided");
      sig.divisors.push_back(1);
      continue;
    }
    if (cur == 0 || sum % cur != 0) fail("sum is not a multiple of the term");
    const Term q = sum / cur;
    if (q <= 1 || mag <= 1 || static_cast<std::uint64_t>(q) != smallest_prime_factor(mag) ||
        static_cast<std::uint64_t>(q) == mag) {
      fail("quotient is not the smallest prime factor of a composite sum");
    }
    sig.divisors.push_back(q);
  }
  return sig;
}

Signature signature_of(const Cycle& cycle) { return signature_of(std::span<const Term>(cycle.terms())); }

}  // namespace subfib

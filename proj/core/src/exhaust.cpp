#include "subfib/exhaust.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <mutex>
#include <set>
#include <thread>

#include "subfib/checked.hpp"
#include "subfib/error.hpp"
#include "subfib/primes.hpp"

namespace subfib {
namespace {

using i128 = __int128;

// Multilinear polynomial; coef[mask] multiplies the product of the
// variables whose bits are set in mask.
struct Multilinear {
  int vars = 0;
  std::vector<i128> coef;
};

// lhs - rhs of the run condition over variables p_1..p_n (bits 0..n-1)
// and q_1..q_n (bits n..2n-1).
Multilinear condition_polynomial(const RunConfiguration& config) {
  const std::size_t n = config.runs();
  const auto& k = config.lengths();
  Multilinear poly;
  poly.vars = static_cast<int>(2 * n);
  poly.coef.assign(std::size_t{1} << (2 * n), 0);
  int excess = 0;
  for (int ki : k) excess += ki - 2;
  poly.coef.back() = checked_add(poly.coef.back(), checked_pow2<i128>(static_cast<unsigned>(excess)));
  poly.coef[0] += (excess % 2 == 0) ? 1 : -1;
  const std::uint64_t subsets = std::uint64_t{1} << (2 * n);
  for (std::uint64_t mask = 0; mask < subsets; ++mask) {
    bool allowed = true;
    for (std::size_t i = 0; i < n && allowed; ++i) {
      if (((mask >> ((i + n - 1) % n)) & 1) && ((mask >> (n + i)) & 1)) allowed = false;
    }
    if (!allowed) continue;
    i128 value = 1;
    std::size_t monomial = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const int dp = static_cast<int>((mask >> i) & 1);
      const int dq = static_cast<int>((mask >> (n + i)) & 1);
      value = checked_mul(value, static_cast<i128>(jacobsthal(k[i] - dp - dq)));
      if (dp) monomial |= std::size_t{1} << ((i + 1) % n);
      if (dq) monomial |= std::size_t{1} << (n + i);
    }
    poly.coef[monomial] = checked_sub(poly.coef[monomial], value);
  }
  return poly;
}

// Sets every variable in `ones` to 1 and renumbers `free` as bits 0..r-1.
Multilinear restrict(const Multilinear& full, const std::vector<int>& free) {
  Multilinear out;
  out.vars = static_cast<int>(free.size());
  out.coef.assign(std::size_t{1} << free.size(), 0);
  for (std::size_t mask = 0; mask < full.coef.size(); ++mask) {
    if (full.coef[mask] == 0) continue;
    std::size_t reduced = 0;
    for (std::size_t j = 0; j < free.size(); ++j) {
      if ((mask >> free[j]) & 1) reduced |= std::size_t{1} << j;
    }
    out.coef[reduced] = checked_add(out.coef[reduced], full.coef[mask]);
  }
  return out;
}

// Substitutes bit 0 with `value`.
Multilinear substitute_first(const Multilinear& poly, i128 value) {
  Multilinear out;
  out.vars = poly.vars - 1;
  out.coef.assign(std::size_t{1} << out.vars, 0);
  for (std::size_t mask = 0; mask < poly.coef.size(); ++mask) {
    const i128 c = (mask & 1) ? checked_mul(poly.coef[mask], value) : poly.coef[mask];
    out.coef[mask >> 1] = checked_add(out.coef[mask >> 1], c);
  }
  return out;
}

bool is_odd_prime(i128 v) {
  return v >= 3 && v <= static_cast<i128>(INT64_MAX) && (v & 1) && is_prime(static_cast<std::uint64_t>(v));
}

std::uint64_t magnitude(i128 v) {
  const i128 m = v < 0 ? -v : v;
  if (m > static_cast<i128>(UINT64_MAX)) throw OverflowError("hyperbola constant exceeds 64 bits");
  return static_cast<std::uint64_t>(m);
}

DivisorAssignment assignment_from(std::size_t n, std::uint64_t ones_mask, const std::vector<int>& free,
                                  const std::vector<Term>& values) {
  std::vector<Term> flat(2 * n, 0);
  for (std::size_t v = 0; v < 2 * n; ++v) {
    if ((ones_mask >> v) & 1) flat[v] = 1;
  }
  for (std::size_t j = 0; j < free.size(); ++j) flat[static_cast<std::size_t>(free[j])] = values[j];
  DivisorAssignment out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = NodeDivisors{flat[i], flat[n + i]};
  return out;
}

DivisorAssignment canonical_divisors(const RunConfiguration& config, DivisorAssignment divisors) {
  const auto& k = config.lengths();
  const std::size_t n = k.size();
  DivisorAssignment best = divisors;
  for (std::size_t r = 1; r < n; ++r) {
    bool symmetric = true;
    for (std::size_t i = 0; i < n && symmetric; ++i) symmetric = k[(i + r) % n] == k[i];
    if (!symmetric) continue;
    DivisorAssignment rotated(n);
    for (std::size_t i = 0; i < n; ++i) rotated[i] = divisors[(i + r) % n];
    best = std::min(best, rotated);
  }
  return best;
}

ExhaustCase make_case(const RunConfiguration& config, const DivisorAssignment& divisors) {
  ExhaustCase c;
  c.divisors = divisors;
  c.signature = signature_from_runs(config, divisors);
  const DivisorReport report = divisor_predicates(divisors);
  if (!report.satisfied()) {
    if (!report.at_least_two_one) c.failure_reasons.push_back("excluded: fewer than two divisors equal 1");
    if (!report.at_least_two_not_one) c.failure_reasons.push_back("excluded: fewer than two divisors differ from 1");
    if (!report.ones_placement_ok) {
      c.failure_reasons.push_back(
          "excluded: the two divisors equal to 1 belong to one node whose successor is not (3,3), (3,5) or (5,3)");
    }
    return c;
  }
  SolveOutcome outcome = solve_signature(c.signature);
  if (outcome.kind == SolveOutcome::Kind::Candidate) {
    c.failure_reasons = outcome.candidate->verdict.reasons;
    c.candidate = std::move(outcome.candidate);
  } else {
    c.failure_reasons.push_back("no candidate: " + outcome.detail);
  }
  return c;
}

struct SearchUnit {
  std::uint64_t ones_mask = 0;
  std::vector<int> free;
  Multilinear poly;  // restricted to `free`
};

// Enumerates bounded values for all free variables but the last, which is
// solved from the remaining linear equation.
void bounded_search(const Multilinear& poly, std::span<const std::uint32_t> primes, Term bound,
                    std::vector<Term>& prefix, std::vector<std::vector<Term>>& out) {
  if (poly.vars == 1) {
    const i128 alpha = poly.coef[1];
    const i128 beta = poly.coef[0];
    if (alpha == 0) {
      if (beta != 0) return;
      for (std::uint32_t p : primes) {
        prefix.push_back(p);
        out.push_back(prefix);
        prefix.pop_back();
      }
      return;
    }
    if (beta % alpha != 0) return;
    const i128 x = -beta / alpha;
    if (x > bound || !is_odd_prime(x)) return;
    prefix.push_back(static_cast<Term>(x));
    out.push_back(prefix);
    prefix.pop_back();
    return;
  }
  for (std::uint32_t p : primes) {
    prefix.push_back(p);
    bounded_search(substitute_first(poly, p), primes, bound, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::optional<std::vector<std::pair<Term, Term>>> solve_hyperbola_primes(i128 a, i128 b, i128 c, i128 d) {
  if (a == 0) return std::nullopt;
  const i128 n = checked_sub(checked_mul(b, c), checked_mul(a, d));
  if (n == 0) return std::nullopt;
  std::vector<std::pair<Term, Term>> out;
  for (std::uint64_t div : divisors(magnitude(n))) {
    for (int sign : {1, -1}) {
      const i128 f = sign * static_cast<i128>(div);
      const i128 xa = f - c;
      if (xa % a != 0) continue;
      const i128 ya = n / f - b;
      if (ya % a != 0) continue;
      const i128 x = xa / a;
      const i128 y = ya / a;
      if (is_odd_prime(x) && is_odd_prime(y)) out.emplace_back(static_cast<Term>(x), static_cast<Term>(y));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::size_t ExhaustReport::valid_count() const {
  std::size_t count = 0;
  for (const auto& cfg : configurations) {
    for (const auto& c : cfg.cases) count += c.valid();
  }
  return count;
}

std::size_t ExhaustReport::candidate_count() const {
  std::size_t count = 0;
  for (const auto& cfg : configurations) {
    for (const auto& c : cfg.cases) count += c.candidate.has_value();
  }
  return count;
}

std::vector<RunConfiguration> run_configurations(int m) {
  std::set<std::pair<std::size_t, std::vector<int>>> seen;
  std::vector<int> parts;
  auto recurse = [&](auto&& self, int remaining) -> void {
    if (remaining == 0) {
      const RunConfiguration canon = RunConfiguration(parts).canonical();
      seen.emplace(canon.runs(), canon.lengths());
      return;
    }
    for (int k = 3; k <= remaining; ++k) {
      if (remaining - k != 0 && remaining - k < 3) continue;
      parts.push_back(k);
      self(self, remaining - k);
      parts.pop_back();
    }
  };
  if (m >= 3) recurse(recurse, m);
  std::vector<RunConfiguration> out;
  for (const auto& [runs, lengths] : seen) out.emplace_back(lengths);
  return out;
}

ConfigurationReport exhaust_configuration(const RunConfiguration& input, const ExhaustOptions& options) {
  ConfigurationReport report;
  report.configuration = input.canonical();
  const RunConfiguration& config = report.configuration;
  const std::size_t n = config.runs();
  if (n == 1) {
    report.discarded = "a cycle of one run is impossible";
    return report;
  }
  if (options.prime_bound < 3) throw DomainError("prime bound must be at least 3");

  const Multilinear poly = condition_polynomial(config);
  const std::size_t vars = 2 * n;
  const Sieve bounded(static_cast<std::uint64_t>(options.prime_bound) + 1);
  const std::span<const std::uint32_t> primes = bounded.odd_primes();

  std::vector<SearchUnit> units;
  for (std::uint64_t ones = 0; ones < (std::uint64_t{1} << vars); ++ones) {
    const auto count = static_cast<std::size_t>(std::popcount(ones));
    if (count < 2 || vars - count < 2) continue;
    SearchUnit unit;
    unit.ones_mask = ones;
    for (std::size_t v = 0; v < vars; ++v) {
      if (!((ones >> v) & 1)) unit.free.push_back(static_cast<int>(v));
    }
    unit.poly = restrict(poly, unit.free);
    units.push_back(std::move(unit));
  }

  std::vector<DivisorAssignment> found;
  std::mutex found_mutex;
  bool exact = true;

  // Two free variables: exact hyperbola factorisation when possible.
  std::vector<const SearchUnit*> bounded_units;
  for (const SearchUnit& unit : units) {
    if (unit.free.size() == 2 && n == 2) {
      const auto& c = unit.poly.coef;
      if (auto sols = solve_hyperbola_primes(c[3], c[1], c[2], c[0])) {
        for (auto [x, y] : *sols) found.push_back(assignment_from(n, unit.ones_mask, unit.free, {x, y}));
        continue;
      }
    }
    exact = false;
    bounded_units.push_back(&unit);
  }

  // Work items: (unit, value of its first free variable).
  std::vector<std::pair<const SearchUnit*, std::size_t>> items;
  for (const SearchUnit* unit : bounded_units) {
    for (std::size_t i = 0; i < primes.size(); ++i) items.emplace_back(unit, i);
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    std::vector<DivisorAssignment> local;
    std::vector<std::vector<Term>> sols;
    std::vector<Term> prefix;
    for (std::size_t idx = next.fetch_add(1); idx < items.size(); idx = next.fetch_add(1)) {
      const auto [unit, first] = items[idx];
      const Term value = primes[first];
      sols.clear();
      prefix.assign(1, value);
      bounded_search(substitute_first(unit->poly, value), primes, options.prime_bound, prefix, sols);
      for (const auto& s : sols) local.push_back(assignment_from(n, unit->ones_mask, unit->free, s));
    }
    std::lock_guard lock(found_mutex);
    found.insert(found.end(), local.begin(), local.end());
  };
  const unsigned workers = std::max(1U, options.workers);
  if (workers == 1 || items.size() < 2) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  std::set<DivisorAssignment> unique;
  for (const auto& d : found) unique.insert(canonical_divisors(config, d));
  for (const auto& d : unique) report.cases.push_back(make_case(config, d));
  report.exact = exact;
  return report;
}

ExhaustReport exhaust_cycles(int m, const ExhaustOptions& options) {
  if (m < 3) throw DomainError("cycle length must be at least 3");
  ExhaustReport report;
  report.length = m;
  report.prime_bound = options.prime_bound;
  for (const RunConfiguration& config : run_configurations(m)) {
    if (options.only_runs != 0 && config.runs() != options.only_runs) continue;
    report.configurations.push_back(exhaust_configuration(config, options));
  }
  return report;
}

}  // namespace subfib

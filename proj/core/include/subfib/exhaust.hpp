#pragma once

#include <optional>
#include <string>
#include <vector>

#include "subfib/algebra.hpp"

namespace subfib {

inline constexpr Term kDefaultPrimeBound = 1000;

struct ExhaustCase {
  DivisorAssignment divisors;
  Signature signature;
  std::optional<CandidateCycle> candidate;
  std::vector<std::string> failure_reasons;

  bool valid() const { return candidate.has_value() && failure_reasons.empty(); }
};

struct ConfigurationReport {
  RunConfiguration configuration;  // canonical rotation
  // True when every divisor solution was found (two-run configurations);
  // false for the bounded search used with three or more runs.
  bool exact = true;
  std::optional<std::string> discarded;  // reason, when ruled out outright
  std::vector<ExhaustCase> cases;         // sorted by divisors
};

struct ExhaustReport {
  int length = 0;
  Term prime_bound = kDefaultPrimeBound;
  std::vector<ConfigurationReport> configurations;

  std::size_t valid_count() const;
  std::size_t candidate_count() const;
};

// Run configurations of total length m with every run >= 3, one per
// rotation class, ordered by run count then lexicographically.
std::vector<RunConfiguration> run_configurations(int m);

struct ExhaustOptions {
  Term prime_bound = kDefaultPrimeBound;
  unsigned workers = 1;
  // Restrict to configurations with this many runs (0 = all).
  std::size_t only_runs = 0;
};

// Every divisor assignment (subject to the one/non-one counting rules)
// satisfying the run condition, each solved and validated.
ExhaustReport exhaust_cycles(int m, const ExhaustOptions& options = {});

// All divisor assignments for one configuration; exposed for tests.
ConfigurationReport exhaust_configuration(const RunConfiguration& config, const ExhaustOptions& options = {});

// Integer solutions (x, y) of A·x·y + B·x + C·y + D = 0 with both x and y
// odd primes, via (A·x + C)(A·y + B) = B·C - A·D. Requires A != 0 and
// B·C - A·D != 0; returns std::nullopt otherwise (infinitely many or
// unstructured solutions).
std::optional<std::vector<std::pair<Term, Term>>> solve_hyperbola_primes(__int128 a, __int128 b, __int128 c,
                                                                        __int128 d);

}  // namespace subfib

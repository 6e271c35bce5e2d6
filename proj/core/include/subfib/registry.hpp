#pragma once

#include <span>
#include <vector>

#include "subfib/engine.hpp"
#include "subfib/runs.hpp"

namespace subfib {

// One of the six known non-trivial cycles. The id is the cycle length,
// which is unique among them.
struct KnownCycle {
  Term id = 0;
  Cycle cycle;
  std::vector<TermPair> starts;  // starting pairs known to reach it
  Node entry_node;               // node through which those starts enter
  Signature signature;           // aligned with cycle.terms()
  CycleRuns runs;
};

// The known cycles ordered by length: 10, 11, 18, 19, 56, 136.
const std::vector<KnownCycle>& registry();

// nullptr when no known cycle has this id.
const KnownCycle* find_known_cycle(Term id);
// Lookup by canonical terms; nullptr when not a known cycle.
const KnownCycle* find_known_cycle(std::span<const Term> canonical_terms);

}  // namespace subfib

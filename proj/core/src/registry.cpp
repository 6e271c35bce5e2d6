#include "subfib/registry.hpp"

#include <algorithm>

namespace subfib {
namespace {

// Cycles printed term by term in the literature.
constexpr Term kCycle10[] = {127, 509, 318, 827, 229, 528, 757, 257, 507, 382};
constexpr Term kCycle18[] = {13, 61, 37, 49, 43, 46, 89, 45, 67, 56, 41, 97, 69, 83, 76, 53, 43, 48};
constexpr Term kCycle19[] = {23, 27, 25, 26, 17, 43, 30, 73, 103, 88, 191, 93, 142, 47, 63, 55, 59, 57, 58};

KnownCycle make_known(std::span<const Term> terms, std::vector<TermPair> starts, Node entry) {
  KnownCycle k;
  k.cycle = Cycle(terms);
  k.id = static_cast<Term>(k.cycle.length());
  k.cycle.set_class(CycleClass{CycleKind::Known, k.id});
  k.starts = std::move(starts);
  k.entry_node = entry;
  k.signature = signature_of(k.cycle);
  k.runs = decompose_cycle(k.cycle);
  return k;
}

// Materialises the cycle reached from an entry node.
std::vector<Term> cycle_from(TermPair node) { return detect_cycle(node).cycle.terms(); }

std::vector<KnownCycle> build_registry() {
  std::vector<KnownCycle> out;
  out.push_back(make_known(kCycle10, {{127, 509}}, Node{127, 509}));
  out.push_back(make_known(cycle_from({37, 199}), {{37, 199}}, Node{37, 199}));
  out.push_back(make_known(kCycle18, {{0, 1}, {1, 1}, {1, 2}}, Node{13, 61}));
  out.push_back(make_known(kCycle19, {{151, 227}}, Node{23, 27}));
  out.push_back(make_known(cycle_from({119, 109}), {{5, 23}}, Node{119, 109}));
  out.push_back(make_known(cycle_from({47, 23}), {{5, 13}, {1, 4}}, Node{47, 23}));
  return out;
}

}  // namespace

const std::vector<KnownCycle>& registry() {
  static const std::vector<KnownCycle> known = build_registry();
  return known;
}

const KnownCycle* find_known_cycle(Term id) {
  for (const KnownCycle& k : registry()) {
    if (k.id == id) return &k;
  }
  return nullptr;
}

const KnownCycle* find_known_cycle(std::span<const Term> canonical_terms) {
  for (const KnownCycle& k : registry()) {
    if (std::ranges::equal(k.cycle.terms(), canonical_terms)) return &k;
  }
  return nullptr;
}

}  // namespace subfib

#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace subfib {

// Sequence terms are exact signed 64-bit integers; any operation that would
// leave that range throws OverflowError.
using Term = std::int64_t;
using TermPair = std::pair<Term, Term>;

inline constexpr std::uint64_t kDefaultMaxSteps = 1'000'000;

// How a sum is reduced before it becomes the next term.
class StepPolicy {
 public:
  enum class Kind { Subprime, FixedPrime };

  static StepPolicy subprime() { return StepPolicy(Kind::Subprime, 0); }
  // Only division by `p` (an odd prime) is ever applied.
  static StepPolicy fixed_prime(Term p);

  Kind kind() const { return kind_; }
  Term prime() const { return prime_; }

  bool operator==(const StepPolicy&) const = default;

 private:
  StepPolicy(Kind kind, Term prime) : kind_(kind), prime_(prime) {}

  Kind kind_;
  Term prime_;
};

Term next_term(Term a, Term b, const StepPolicy& policy = StepPolicy::subprime());

// The start pair followed by `steps` further terms.
std::vector<Term> generate(TermPair start, std::uint64_t steps,
                           const StepPolicy& policy = StepPolicy::subprime());

enum class CycleKind { Trivial, Known, Unknown };

struct CycleClass {
  CycleKind kind = CycleKind::Unknown;
  // Trivial: the repeated value. Known: the registry id (the cycle length).
  Term value = 0;

  bool operator==(const CycleClass&) const = default;
  auto operator<=>(const CycleClass&) const = default;
};

std::string to_string(const CycleClass& c);

// A cycle stored in canonical form: the lexicographically least rotation.
class Cycle {
 public:
  Cycle() = default;
  // Canonicalises `terms`; class is left Unknown (Trivial when length 1).
  explicit Cycle(std::span<const Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t length() const { return terms_.size(); }
  const CycleClass& cycle_class() const { return class_; }
  void set_class(CycleClass c) { class_ = c; }

  bool is_trivial() const { return terms_.size() == 1; }
  Term max_term() const;
  Term min_term() const;

  bool operator==(const Cycle& other) const { return terms_ == other.terms_; }

 private:
  std::vector<Term> terms_;
  CycleClass class_{};
};

// Index of the least rotation under lexicographic order.
std::size_t least_rotation(std::span<const Term> terms);
std::vector<Term> canonical_rotation(std::span<const Term> terms);

struct Trajectory {
  TermPair start{};
  // Generated terms up to and including the second occurrence of the
  // repeated pair.
  std::vector<Term> terms;
  std::size_t tail_length = 0;
  Cycle cycle;
  // First node (coprime positive odd pair preceded by an even term inside
  // the cycle) reached on the cycle, if the cycle has one.
  std::optional<TermPair> entry_node;
};

// Iterates from `start` until an ordered pair of consecutive terms repeats.
// Throws NonterminationSuspected after `max_steps` new terms.
Trajectory classify(TermPair start, std::uint64_t max_steps = kDefaultMaxSteps,
                    const StepPolicy& policy = StepPolicy::subprime());

// Same detection, without consulting the known-cycle registry.
Trajectory detect_cycle(TermPair start, std::uint64_t max_steps = kDefaultMaxSteps,
                        const StepPolicy& policy = StepPolicy::subprime());

struct Shape {
  std::string parities;  // 'O' or 'E' per term

  bool operator==(const Shape&) const = default;
};

Shape shape_of(std::span<const Term> terms);

struct Signature {
  // Entry i is the divisor applied to t[i-2] + t[i-1] to obtain t[i].
  std::vector<Term> divisors;

  bool operator==(const Signature&) const = default;
};

// Signature of a cyclic term list. Each divisor must be 1 (sum kept) or the
// smallest prime factor of the sum; throws InconsistentCycle otherwise.
Signature signature_of(std::span<const Term> cyclic_terms);
Signature signature_of(const Cycle& cycle);

Term gcd(Term a, Term b);

}  // namespace subfib

#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace subfib {

inline constexpr std::uint64_t kDefaultSieveBound = 10'000'000;

// Deterministic Miller-Rabin; exact for every 64-bit input.
bool is_prime(std::uint64_t n);

// Smallest-prime-factor table for [0, bound). Immutable after construction
// and safe to share across threads.
class Sieve {
 public:
  explicit Sieve(std::uint64_t bound = kDefaultSieveBound);

  std::uint64_t bound() const { return bound_; }

  // Least prime dividing n, for n >= 2. Falls back to trial division when
  // n is at or above the bound. Throws DomainError for n < 2.
  std::uint64_t smallest_prime_factor(std::uint64_t n) const;

  bool is_prime(std::uint64_t n) const;

  // Odd primes below the bound, ascending.
  std::span<const std::uint32_t> odd_primes() const { return odd_primes_; }

 private:
  std::uint64_t trial_division(std::uint64_t n) const;

  std::uint64_t bound_;
  // Entry n holds spf(n) for composite n and 0 for primes (spf < 2^16 for
  // every composite below 2^32).
  std::vector<std::uint16_t> spf_;
  std::vector<std::uint32_t> odd_primes_;
};

// Process-wide sieve used by the engine. The bound comes from
// configure_default_sieve() if called first, otherwise from the
// SUBFIB_SIEVE_BOUND environment variable, otherwise kDefaultSieveBound.
const Sieve& default_sieve();

// Must be called before the first default_sieve() access to take effect.
// Returns false if the sieve was already built.
bool configure_default_sieve(std::uint64_t bound);

std::uint64_t smallest_prime_factor(std::uint64_t n);

// Prime factorisation as (prime, exponent) pairs in ascending order.
// Uses Pollard rho for cofactors beyond the sieve.
std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n);

// All positive divisors of n, ascending. n must be nonzero.
std::vector<std::uint64_t> divisors(std::uint64_t n);

}  // namespace subfib

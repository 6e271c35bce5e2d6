#include "subfib/primes.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <mutex>
#include <numeric>
#include <string>

#include "subfib/error.hpp"

namespace subfib {
namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mul_mod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 pow_mod(u64 base, u64 exp, u64 m) {
  u64 result = 1;
  base %= m;
  while (exp != 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

bool miller_rabin(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // The first twelve primes are a deterministic witness set below 3.3e24.
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

u64 pollard_rho(u64 n) {
  if (n % 2 == 0) return 2;
  for (u64 c = 1;; ++c) {
    u64 x = 2, y = 2, d = 1;
    auto f = [&](u64 v) { return (mul_mod(v, v, n) + c) % n; };
    while (d == 1) {
      x = f(x);
      y = f(f(y));
      d = std::gcd(x > y ? x - y : y - x, n);
    }
    if (d != n) return d;
  }
}

u64 smallest_factor_rho(u64 n) {
  if (n == 1 || miller_rabin(n)) return n;
  const u64 d = pollard_rho(n);
  return std::min(smallest_factor_rho(d), smallest_factor_rho(n / d));
}

constexpr u64 kMaxSieveBound = u64{1} << 32;

std::mutex g_sieve_mutex;
std::atomic<const Sieve*> g_sieve{nullptr};
u64 g_requested_bound = 0;

u64 bound_from_environment() {
  const char* env = std::getenv("SUBFIB_SIEVE_BOUND");
  if (env == nullptr || *env == '\0') return kDefaultSieveBound;
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(env, &used);
    if (used != std::string(env).size()) return kDefaultSieveBound;
    return v;
  } catch (const std::exception&) {
    return kDefaultSieveBound;
  }
}

}  // namespace

bool is_prime(std::uint64_t n) {
  const Sieve& sieve = default_sieve();
  return sieve.is_prime(n);
}

Sieve::Sieve(std::uint64_t bound) : bound_(std::clamp<u64>(bound, 16, kMaxSieveBound)) {
  spf_.assign(bound_, 0);
  for (u64 i = 2; i * i < bound_; ++i) {
    if (spf_[i] != 0) continue;
    for (u64 j = i * i; j < bound_; j += i) {
      if (spf_[j] == 0) spf_[j] = static_cast<std::uint16_t>(i);
    }
  }
  for (u64 i = 3; i < bound_; i += 2) {
    if (spf_[i] == 0) odd_primes_.push_back(static_cast<std::uint32_t>(i));
  }
}

std::uint64_t Sieve::smallest_prime_factor(std::uint64_t n) const {
  if (n < 2) throw DomainError("smallest_prime_factor: argument must be >= 2, got " + std::to_string(n));
  if (n < bound_) return spf_[n] == 0 ? n : spf_[n];
  return trial_division(n);
}

std::uint64_t Sieve::trial_division(std::uint64_t n) const {
  if (n % 2 == 0) return 2;
  if (miller_rabin(n)) return n;
  for (u64 p : odd_primes_) {
    if (p * p > n) return n;
    if (n % p == 0) return p;
  }
  // No factor below the sieve bound: every prime factor is large.
  return smallest_factor_rho(n);
}

bool Sieve::is_prime(std::uint64_t n) const {
  if (n < 2) return false;
  if (n < bound_) return spf_[n] == 0;
  return miller_rabin(n);
}

const Sieve& default_sieve() {
  if (const Sieve* s = g_sieve.load(std::memory_order_acquire)) return *s;
  std::lock_guard lock(g_sieve_mutex);
  if (const Sieve* s = g_sieve.load(std::memory_order_relaxed)) return *s;
  const u64 bound = g_requested_bound != 0 ? g_requested_bound : bound_from_environment();
  // Intentionally leaked: lives for the whole process.
  const Sieve* s = new Sieve(bound);
  g_sieve.store(s, std::memory_order_release);
  return *s;
}

bool configure_default_sieve(std::uint64_t bound) {
  std::lock_guard lock(g_sieve_mutex);
  if (g_sieve.load(std::memory_order_relaxed) != nullptr) return false;
  g_requested_bound = bound;
  return true;
}

std::uint64_t smallest_prime_factor(std::uint64_t n) { return default_sieve().smallest_prime_factor(n); }

std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n) {
  if (n == 0) throw DomainError("factorize: argument must be nonzero");
  const Sieve& sieve = default_sieve();
  std::vector<u64> primes;
  std::vector<u64> pending{n};
  while (!pending.empty()) {
    u64 m = pending.back();
    pending.pop_back();
    if (m == 1) continue;
    if (m < sieve.bound() || sieve.is_prime(m)) {
      while (m > 1) {
        const u64 p = sieve.smallest_prime_factor(m);
        primes.push_back(p);
        m /= p;
        if (m >= sieve.bound() && !sieve.is_prime(m)) {
          pending.push_back(m);
          break;
        }
      }
      continue;
    }
    const u64 d = pollard_rho(m);
    pending.push_back(d);
    pending.push_back(m / d);
  }
  std::sort(primes.begin(), primes.end());
  std::vector<std::pair<u64, unsigned>> out;
  for (u64 p : primes) {
    if (!out.empty() && out.back().first == p) {
      ++out.back().second;
    } else {
      out.emplace_back(p, 1);
    }
  }
  return out;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
  std::vector<u64> out{1};
  for (auto [p, e] : factorize(n)) {
    const std::size_t base = out.size();
    u64 pk = 1;
    for (unsigned i = 0; i < e; ++i) {
      pk *= p;
      for (std::size_t j = 0; j < base; ++j) out.push_back(out[j] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace subfib

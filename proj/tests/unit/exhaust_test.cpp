#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "subfib/exhaust.hpp"

using namespace subfib;
using V = std::vector<Term>;

namespace {

std::vector<std::vector<int>> lengths_of(const std::vector<RunConfiguration>& cs) {
  std::vector<std::vector<int>> out;
  for (const auto& c : cs) out.push_back(c.lengths());
  return out;
}

}  // namespace

TEST_CASE("run configurations up to rotation") {
  using L = std::vector<std::vector<int>>;
  CHECK(lengths_of(run_configurations(6)) == L{{6}, {3, 3}});
  CHECK(lengths_of(run_configurations(8)) == L{{8}, {3, 5}, {4, 4}});
  CHECK(lengths_of(run_configurations(9)) == L{{9}, {3, 6}, {4, 5}, {3, 3, 3}});
  // (3,3,4), (3,4,3), (4,3,3) are one configuration.
  CHECK(lengths_of(run_configurations(10)) == L{{10}, {3, 7}, {4, 6}, {5, 5}, {3, 3, 4}});
  CHECK(run_configurations(5).size() == 1);
}

TEST_CASE("hyperbola solver, the 6-cycle case with p1 = p2 = 1") {
  // (q1 - 2)(q2 - 2) = 9 written as q1 q2 - 2 q1 - 2 q2 - 5 = 0.
  const auto sols = solve_hyperbola_primes(1, -2, -2, -5);
  REQUIRE(sols.has_value());
  CHECK(*sols == std::vector<std::pair<Term, Term>>{{3, 11}, {5, 5}, {11, 3}});
  CHECK_FALSE(solve_hyperbola_primes(0, 1, 1, 1).has_value());
  CHECK_FALSE(solve_hyperbola_primes(1, 2, 3, 6).has_value());
}

TEST_CASE("hyperbola solver against brute force") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    const Term a = 1 + static_cast<Term>(rng() % 12);
    const Term b = static_cast<Term>(rng() % 81) - 40;
    const Term c = static_cast<Term>(rng() % 81) - 40;
    const Term d = static_cast<Term>(rng() % 401) - 200;
    const auto sols = solve_hyperbola_primes(a, b, c, d);
    if (!sols) continue;
    // With a >= 1 every solution has |A x + C| <= |BC - AD| < 3000.
    std::vector<std::pair<Term, Term>> brute;
    for (Term x = 3; x < 3200; x += 2) {
      if (!oracle::prime(static_cast<std::uint64_t>(x))) continue;
      const Term den = a * x + c;
      if (den == 0) continue;
      const Term num = -(b * x + d);
      if (num % den != 0) continue;
      const Term y = num / den;
      if (y >= 3 && y % 2 == 1 && oracle::prime(static_cast<std::uint64_t>(y))) brute.emplace_back(x, y);
    }
    REQUIRE(*sols == brute);
  }
}

TEST_CASE("six-cycles: the six known candidates and nothing valid") {
  const ExhaustReport r = exhaust_cycles(6);
  CHECK(r.valid_count() == 0);
  std::map<V, V> found;
  for (const ConfigurationReport& c : r.configurations) {
    if (c.configuration.runs() == 1) {
      CHECK(c.discarded.has_value());
      continue;
    }
    CHECK(c.exact);
    for (const ExhaustCase& e : c.cases) {
      if (!e.candidate) continue;
      V key;
      for (const NodeDivisors& d : e.divisors) {
        key.push_back(d.p);
        key.push_back(d.q);
      }
      found[key] = e.candidate->terms;
      CHECK_FALSE(e.failure_reasons.empty());
    }
  }
  const std::map<V, V> table{
      {{1, 3, 1, 11}, {5, 3, 4, 7, 1, 4}},    {{1, 5, 1, 5}, {3, 1, 2, 3, 1, 2}},
      {{3, 1, 11, 1}, {9, 19, 14, 3, 17, 10}}, {{5, 1, 5, 1}, {1, 3, 2, 1, 3, 2}},
      {{1, 5, 37, 1}, {41, 11, 26, 1, 27, 14}}, {{1, 37, 5, 1}, {27, 1, 14, 3, 17, 10}},
  };
  CHECK(found == table);
  CHECK(r.candidate_count() == 6);
}

TEST_CASE("no valid cycles of length 7 or 8, nor two-run cycles up to 11") {
  for (int m : {7, 8}) CHECK(exhaust_cycles(m).valid_count() == 0);
  ExhaustOptions two;
  two.only_runs = 2;
  for (int m : {9, 10, 11}) {
    const ExhaustReport r = exhaust_cycles(m, two);
    CHECK(r.valid_count() == 0);
    for (const auto& c : r.configurations) CHECK(c.exact);
  }
}

TEST_CASE("exhaust finds the 10- and 11-cycles") {
  ExhaustOptions opts;
  opts.prime_bound = 40;
  opts.workers = 4;
  std::set<V> valid;
  for (int m : {10, 11}) {
    for (const auto& c : exhaust_cycles(m, opts).configurations) {
      for (const auto& e : c.cases) {
        if (e.valid()) valid.insert(canonical_rotation(e.candidate->terms));
      }
    }
  }
  CHECK(valid.size() == 2);
  CHECK(valid.count(V{127, 509, 318, 827, 229, 528, 757, 257, 507, 382}) == 1);
  CHECK(valid.count(V{37, 199, 118, 317, 145, 231, 188, 419, 607, 513, 560}) == 1);
}

TEST_CASE("exhaust output does not depend on worker count") {
  ExhaustOptions one;
  one.prime_bound = 60;
  ExhaustOptions many = one;
  many.workers = 8;
  const ExhaustReport a = exhaust_cycles(12, one);
  const ExhaustReport b = exhaust_cycles(12, many);
  REQUIRE(a.configurations.size() == b.configurations.size());
  for (std::size_t i = 0; i < a.configurations.size(); ++i) {
    const auto& x = a.configurations[i].cases;
    const auto& y = b.configurations[i].cases;
    REQUIRE(x.size() == y.size());
    for (std::size_t j = 0; j < x.size(); ++j) {
      REQUIRE(x[j].divisors == y[j].divisors);
      REQUIRE(x[j].failure_reasons == y[j].failure_reasons);
    }
  }
}

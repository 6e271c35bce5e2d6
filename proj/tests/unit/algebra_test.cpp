#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "subfib/algebra.hpp"
#include "subfib/error.hpp"
#include "subfib/jacobsthal.hpp"
#include "subfib/registry.hpp"

using namespace subfib;
using V = std::vector<Term>;

namespace {

BigInt big(oracle::i128 v) {
  const bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
  std::string s;
  do {
    s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  } while (u != 0);
  return BigInt((neg ? "-" : "") + s);
}

oracle::i128 J(int n) { return oracle::jacobsthal(n); }

oracle::i128 sign_term(int e) { return e % 2 == 0 ? 1 : -1; }

// The expanded two-run identity as printed: returns the right-hand side.
oracle::i128 printed_two_run(int k1, int k2, oracle::i128 p1, oracle::i128 q1, oracle::i128 p2, oracle::i128 q2) {
  return J(k1 - 1) * J(k2 - 1) * p1 * p2 + J(k1) * J(k2 - 2) * p1 * q2 + J(k1 - 2) * J(k2) * q1 * p2 +
         J(k1 - 1) * J(k2 - 1) * q1 * q2 + J(k1) * J(k2 - 1) * p1 + J(k1 - 1) * J(k2) * q1 +
         J(k1 - 1) * J(k2) * p2 + J(k1) * J(k2 - 1) * q2 + J(k1) * J(k2) - sign_term(k1 + k2 - 4);
}

// The expanded three-run identity as printed.
oracle::i128 printed_three_run(int k1, int k2, int k3, oracle::i128 p1, oracle::i128 q1, oracle::i128 p2,
                               oracle::i128 q2, oracle::i128 p3, oracle::i128 q3) {
  return J(k1 - 1) * J(k2 - 1) * J(k3 - 1) * p1 * p2 * p3 + J(k1 - 1) * J(k2) * J(k3 - 2) * p1 * p2 * q3 +
         J(k1) * J(k2 - 2) * J(k3 - 1) * p1 * q2 * p3 + J(k1) * J(k2 - 1) * J(k3 - 2) * p1 * q2 * q3 +
         J(k1 - 2) * J(k2 - 1) * J(k3) * q1 * p2 * p3 + J(k1 - 2) * J(k2) * J(k3 - 1) * q1 * p2 * q3 +
         J(k1 - 1) * J(k2 - 2) * J(k3) * q1 * q2 * p3 + J(k1 - 1) * J(k2 - 1) * J(k3 - 1) * q1 * q2 * q3 +
         J(k1 - 1) * J(k2 - 1) * J(k3) * p2 * p3 + J(k1 - 1) * J(k2) * J(k3 - 1) * p2 * q3 +
         J(k1) * J(k2 - 2) * J(k3) * q2 * p3 + J(k1) * J(k2 - 1) * J(k3 - 1) * q2 * q3 +
         J(k1) * J(k2 - 1) * J(k3 - 1) * p3 * p1 + J(k1 - 1) * J(k2 - 1) * J(k3) * p3 * q1 +
         J(k1) * J(k2) * J(k3 - 2) * q3 * p1 + J(k1 - 1) * J(k2) * J(k3 - 1) * q3 * q1 +
         J(k1 - 1) * J(k2) * J(k3 - 1) * p1 * p2 + J(k1) * J(k2 - 1) * J(k3 - 1) * p1 * q2 +
         J(k1 - 2) * J(k2) * J(k3) * q1 * p2 + J(k1 - 1) * J(k2 - 1) * J(k3) * q1 * q2 +
         J(k1) * J(k2) * J(k3 - 1) * p1 + J(k1 - 1) * J(k2) * J(k3) * p2 + J(k1) * J(k2 - 1) * J(k3) * p3 +
         J(k1 - 1) * J(k2) * J(k3) * q1 + J(k1) * J(k2 - 1) * J(k3) * q2 + J(k1) * J(k2) * J(k3 - 1) * q3 +
         J(k1) * J(k2) * J(k3) - sign_term(k1 + k2 + k3 - 6);
}

// Direct subset sum: bit i picks p_{i+1}, bit n+i picks q_i, and p_i, q_i
// are never picked together.
oracle::i128 subset_rhs(const std::vector<int>& k, const std::vector<std::pair<Term, Term>>& d) {
  const std::size_t n = k.size();
  oracle::i128 total = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (2 * n)); ++mask) {
    bool ok = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (((mask >> ((i + n - 1) % n)) & 1) && ((mask >> (n + i)) & 1)) ok = false;
    }
    if (!ok) continue;
    oracle::i128 term = 1;
    for (std::size_t i = 0; i < n; ++i) {
      const int dp = static_cast<int>((mask >> i) & 1);
      const int dq = static_cast<int>((mask >> (n + i)) & 1);
      term *= J(k[i] - dp - dq);
      if (dp) term *= d[(i + 1) % n].first;
      if (dq) term *= d[i].second;
    }
    total += term;
  }
  int excess = 0;
  for (int ki : k) excess += ki - 2;
  return total - sign_term(excess);
}

const V kSmallDivisors{1, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

Term pick(std::mt19937_64& rng) { return kSmallDivisors[rng() % kSmallDivisors.size()]; }

std::vector<std::vector<oracle::i128>> to_oracle(const Matrix<BigInt>& m) {
  std::vector<std::vector<oracle::i128>> out(m.rows(), std::vector<oracle::i128>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) out[r][c] = m(r, c).get_si();
  }
  return out;
}

}  // namespace

TEST_CASE("jacobsthal") {
  CHECK(jacobsthal(0) == 0);
  CHECK(jacobsthal(1) == 1);
  CHECK(jacobsthal(2) == 1);
  CHECK(jacobsthal(5) == 11);
  CHECK(jacobsthal(10) == 341);
  for (int n = 0; n <= 62; ++n) {
    REQUIRE(static_cast<oracle::i128>(jacobsthal(n)) == oracle::jacobsthal(n));
    if (n >= 1) REQUIRE(jacobsthal(n) % 2 != 0);
    if (n >= 1) REQUIRE((Term{1} << (n - 1)) - jacobsthal(n) == (n >= 1 ? jacobsthal(n - 1) : 0));
  }
  CHECK(static_cast<oracle::i128>(jacobsthal(64)) == oracle::jacobsthal(64));
  CHECK_THROWS_AS(jacobsthal(65), OverflowError);
  CHECK_THROWS_AS(jacobsthal(-1), DomainError);
}

TEST_CASE("determinant against Laplace expansion") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng() % 6;
    Matrix<BigInt> m(n, n);
    std::vector<std::vector<oracle::i128>> o(n, std::vector<oracle::i128>(n));
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) {
        const long v = static_cast<long>(rng() % 41) - 20;
        m(r, c) = v;
        o[r][c] = v;
      }
    }
    REQUIRE(determinant(m) == big(oracle::determinant(o)));
  }
  CHECK(determinant(Matrix<BigInt>(0, 0)) == 1);
}

TEST_CASE("nullspace") {
  Matrix<Rational> m(2, 3);
  m(0, 0) = 1;
  m(0, 1) = 2;
  m(0, 2) = 3;
  m(1, 0) = 2;
  m(1, 1) = 4;
  m(1, 2) = 6;
  const auto basis = nullspace(m);
  REQUIRE(basis.size() == 2);
  for (const auto& v : basis) CHECK(m(0, 0) * v[0] + m(0, 1) * v[1] + m(0, 2) * v[2] == 0);

  Matrix<Rational> id(3, 3);
  for (std::size_t i = 0; i < 3; ++i) id(i, i) = 1;
  CHECK(nullspace(id).empty());
}

TEST_CASE("signature system annihilates known cycles") {
  const Matrix<BigInt> s = signature_system(Signature{{1, 1, 1}});
  CHECK(s(0, 0) == 1);
  CHECK(s(0, 1) == -1);
  CHECK(s(0, 2) == -1);
  CHECK(s(1, 0) == -1);
  CHECK(s(1, 1) == 1);
  CHECK(s(1, 2) == -1);
  for (const KnownCycle& k : registry()) {
    const Matrix<BigInt> m = signature_system(k.signature);
    const V& t = k.cycle.terms();
    for (std::size_t r = 0; r < m.rows(); ++r) {
      BigInt dot = 0;
      for (std::size_t c = 0; c < m.cols(); ++c) dot += m(r, c) * BigInt(static_cast<long>(t[c]));
      REQUIRE(dot == 0);
    }
  }
}

TEST_CASE("solve signature") {
  SolveOutcome o = solve_signature(Signature{{7, 1, 2, 1, 5, 2, 2}});
  REQUIRE(o.kind == SolveOutcome::Kind::Candidate);
  CHECK(o.candidate->terms == V{13, 51, 32, 83, 23, 53, 38});
  CHECK_FALSE(o.candidate->verdict.valid());
  CHECK(o.candidate->verdict.reasons.front() == "38,13 must be followed by 17, not 51");

  o = solve_signature(Signature{{1, 5, 2, 1, 5, 2}});
  REQUIRE(o.kind == SolveOutcome::Kind::Candidate);
  CHECK(o.candidate->terms == V{3, 1, 2, 3, 1, 2});

  CHECK(solve_signature(Signature{{1, 1, 1}}).kind == SolveOutcome::Kind::NoSolution);

  // Round trip through every registry cycle.
  for (const KnownCycle& k : registry()) {
    const SolveOutcome r = solve_signature(k.signature);
    REQUIRE(r.kind == SolveOutcome::Kind::Candidate);
    CHECK(r.candidate->terms == k.cycle.terms());
    CHECK(r.candidate->verdict.valid());
  }
}

TEST_CASE("validate candidate") {
  const Verdict bad = validate_candidate(V{3, 1, 2, 3, 1, 2});
  CHECK(bad.reasons == std::vector<std::string>{"2,3 must be followed by 5, not 1",
                                                "2,3 must be followed by 5, not 1", "smallest term 1 is below 7"});
  CHECK(validate_candidate(V{13, 61, 37, 49, 43, 46, 89, 45, 67, 56, 41, 97, 69, 83, 76, 53, 43, 48}).valid());
  const Verdict shared = validate_candidate(V{9, 15, 12});
  CHECK_FALSE(shared.valid());
}

TEST_CASE("run configuration") {
  CHECK(RunConfiguration({3, 4, 3}) == RunConfiguration({3, 3, 4}));
  CHECK_FALSE(RunConfiguration({3, 4, 5}) == RunConfiguration({3, 5, 4}));
  CHECK(RunConfiguration({4, 3, 3}).canonical().lengths() == std::vector<int>{3, 3, 4});
  CHECK(RunConfiguration({6, 4, 5, 3}).total_length() == 18);
  CHECK_THROWS_AS(RunConfiguration({3, 2}), DomainError);
  CHECK_THROWS_AS(RunConfiguration(std::vector<int>{}), DomainError);
  CHECK(signature_from_runs(RunConfiguration({3, 3}), {{1, 3}, {1, 11}}).divisors == V{1, 3, 2, 1, 11, 2});
}

TEST_CASE("run matrix has the two-run layout") {
  const Matrix<BigInt> m = run_matrix(RunConfiguration({3, 4}), {{5, 7}, {11, 13}});
  // k1 = 3, k2 = 4, p2 = 11, q2 = 13, p1 = 5, q1 = 7.
  const std::vector<std::vector<long>> expect{
      {2, 3, -11, 0},
      {1, 1, -12, -4 * 13},
      {-5, 0, 2, 5},
      {-6, -2 * 7, 1, 3},
  };
  for (std::size_t r = 0; r < 4; ++r) {
    for (std::size_t c = 0; c < 4; ++c) REQUIRE(m(r, c) == expect[r][c]);
  }
}

TEST_CASE("known cycles satisfy the run condition") {
  for (const KnownCycle& k : registry()) {
    const RunConfiguration config(k.runs.configuration);
    const ConditionSides sides = nrun_condition(config, k.runs.divisors);
    CHECK(sides.holds());
    CHECK(determinant(run_matrix(config, k.runs.divisors)) == 0);
  }
}

TEST_CASE("run condition matches printed expansions and the determinant") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int k1 = 3 + static_cast<int>(rng() % 6), k2 = 3 + static_cast<int>(rng() % 6);
    const Term p1 = pick(rng), q1 = pick(rng), p2 = pick(rng), q2 = pick(rng);
    const RunConfiguration config({k1, k2});
    const DivisorAssignment d{{p1, q1}, {p2, q2}};
    const ConditionSides s = nrun_condition(config, d);
    REQUIRE(s.rhs == big(printed_two_run(k1, k2, p1, q1, p2, q2)));
    const oracle::i128 lhs = (oracle::i128{1} << (k1 + k2 - 4)) * p1 * q1 * p2 * q2;
    REQUIRE(s.lhs == big(lhs));
    REQUIRE(determinant(run_matrix(config, d)) == s.lhs - s.rhs);
  }
  for (int trial = 0; trial < 200; ++trial) {
    const int k1 = 3 + static_cast<int>(rng() % 6), k2 = 3 + static_cast<int>(rng() % 6),
              k3 = 3 + static_cast<int>(rng() % 6);
    const Term p1 = pick(rng), q1 = pick(rng), p2 = pick(rng), q2 = pick(rng), p3 = pick(rng), q3 = pick(rng);
    const RunConfiguration config({k1, k2, k3});
    const DivisorAssignment d{{p1, q1}, {p2, q2}, {p3, q3}};
    const ConditionSides s = nrun_condition(config, d);
    REQUIRE(s.rhs == big(printed_three_run(k1, k2, k3, p1, q1, p2, q2, p3, q3)));
    const Matrix<BigInt> m = run_matrix(config, d);
    REQUIRE(determinant(m) == s.lhs - s.rhs);
    REQUIRE(determinant(m) == big(oracle::determinant(to_oracle(m))));
  }
  // Four and five runs: the determinant is the only oracle.
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 4 + rng() % 2;
    std::vector<int> k;
    DivisorAssignment d;
    for (std::size_t i = 0; i < n; ++i) {
      k.push_back(3 + static_cast<int>(rng() % 5));
      d.push_back({pick(rng), pick(rng)});
    }
    const ConditionSides s = nrun_condition(RunConfiguration(k), d);
    std::vector<std::pair<Term, Term>> pairs;
    for (const NodeDivisors& x : d) pairs.emplace_back(x.p, x.q);
    REQUIRE(s.rhs == big(subset_rhs(k, pairs)));
    REQUIRE(determinant(run_matrix(RunConfiguration(k), d)) == s.lhs - s.rhs);
  }
}

TEST_CASE("divisor predicates") {
  const DivisorReport r18 = divisor_predicates({{7, 1}, {1, 3}, {3, 1}, {3, 3}});
  CHECK(r18.ones == 3);
  CHECK(r18.satisfied());
  CHECK_FALSE(divisor_predicates({{1, 1}, {1, 1}}).at_least_two_not_one);
  CHECK_FALSE(divisor_predicates({{3, 5}, {7, 1}}).at_least_two_one);
  const DivisorReport case1 = divisor_predicates({{1, 1}, {3, 7}});
  CHECK_FALSE(case1.ones_placement_ok);
  CHECK(divisor_predicates({{1, 1}, {3, 5}}).ones_placement_ok);
  CHECK(divisor_predicates({{1, 1}, {5, 3}}).ones_placement_ok);
  CHECK(divisor_predicates({{1, 1}, {3, 3}}).ones_placement_ok);
}

#include "subfib/algebra.hpp"

#include <array>

#include <algorithm>
#include <numeric>

#include "subfib/checked.hpp"
#include "subfib/error.hpp"
#include "subfib/primes.hpp"

namespace subfib {
namespace {

BigInt big(Term v) { return BigInt(static_cast<long>(v)); }

BigInt pow2(unsigned e) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
  return r;
}

Term to_term(const BigInt& v) {
  if (!v.fits_slong_p()) throw OverflowError("value " + v.get_str() + " exceeds 64-bit terms");
  return static_cast<Term>(v.get_si());
}

std::string pair_str(Term x, Term y) { return std::to_string(x) + "," + std::to_string(y); }

}  // namespace

std::int64_t jacobsthal(int n) {
  if (n < 0) throw DomainError("jacobsthal: negative index");
  if (n > kMaxJacobsthalIndex) throw OverflowError("jacobsthal: index " + std::to_string(n) + " exceeds int64");
  std::int64_t prev = 0;  // J_{i-1}
  std::int64_t cur = 1;   // J_i
  if (n == 0) return 0;
  for (int i = 1; i < n; ++i) {
    const std::int64_t next = checked_add(cur, checked_mul<std::int64_t>(2, prev));
    prev = cur;
    cur = next;
  }
  return cur;
}

BigInt determinant(const Matrix<BigInt>& input) {
  const std::size_t n = input.rows();
  if (n != input.cols()) throw DomainError("determinant: matrix is not square");
  if (n == 0) return 1;
  Matrix<BigInt> m = input;
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t r = k + 1;
      while (r < n && m(r, k) == 0) ++r;
      if (r == n) return 0;
      m.swap_rows(k, r);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j));
        mpz_divexact(m(i, j).get_mpz_t(), m(i, j).get_mpz_t(), prev.get_mpz_t());
      }
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

std::vector<std::vector<Rational>> nullspace(const Matrix<Rational>& input) {
  Matrix<Rational> m = input;
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m(p, c) == 0) ++p;
    if (p == rows) continue;
    m.swap_rows(r, p);
    const Rational inv = 1 / m(r, c);
    for (std::size_t j = c; j < cols; ++j) {
      if (m(r, j) != 0) m(r, j) *= inv;
    }
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m(i, c) == 0) continue;
      const Rational f = m(i, c);
      for (std::size_t j = c; j < cols; ++j) {
        if (m(r, j) != 0) m(i, j) -= f * m(r, j);
      }
    }
    pivot_cols.push_back(c);
    ++r;
  }
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t c : pivot_cols) is_pivot[c] = true;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(cols, Rational(0));
    v[free] = 1;
    for (std::size_t i = 0; i < pivot_cols.size(); ++i) v[pivot_cols[i]] = -m(i, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

Matrix<BigInt> signature_system(const Signature& signature) {
  const std::size_t m = signature.divisors.size();
  if (m < 3) throw DomainError("signature_system: need at least three entries");
  Matrix<BigInt> a(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    if (signature.divisors[i] < 1) throw DomainError("signature_system: divisors must be >= 1");
    a(i, i) = big(signature.divisors[i]);
    a(i, (i + m - 2) % m) -= 1;
    a(i, (i + m - 1) % m) -= 1;
  }
  return a;
}

SolveOutcome solve_signature(const Signature& signature) {
  const Matrix<BigInt> system = signature_system(signature);
  const std::size_t m = system.rows();
  Matrix<Rational> q(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) q(i, j) = Rational(system(i, j));
  }
  const auto basis = nullspace(q);
  SolveOutcome out;
  out.nullity = basis.size();
  if (basis.empty()) {
    out.kind = SolveOutcome::Kind::NoSolution;
    out.detail = "signature system has only the zero solution";
    return out;
  }
  if (basis.size() > 1) {
    out.kind = SolveOutcome::Kind::Degenerate;
    out.detail = "solution space has dimension " + std::to_string(basis.size());
    return out;
  }
  std::vector<Rational> v = basis.front();
  if (v[0] == 0) {
    out.kind = SolveOutcome::Kind::NoSolution;
    out.detail = "component 1 is zero";
    return out;
  }
  const Rational first = v[0];
  for (Rational& x : v) x /= first;
  BigInt denom_lcm = 1;
  for (const Rational& x : v) mpz_lcm(denom_lcm.get_mpz_t(), denom_lcm.get_mpz_t(), x.get_den_mpz_t());
  std::vector<BigInt> ints;
  ints.reserve(m);
  BigInt content = 0;
  for (const Rational& x : v) {
    BigInt n = x.get_num() * (denom_lcm / x.get_den());
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), n.get_mpz_t());
    ints.push_back(std::move(n));
  }
  for (std::size_t i = 0; i < m; ++i) {
    ints[i] /= content;
    if (ints[i] <= 0) {
      out.kind = SolveOutcome::Kind::NoSolution;
      out.detail = "component " + std::to_string(i + 1) + " is non-positive (" + ints[i].get_str() + ")";
      return out;
    }
  }
  CandidateCycle cand;
  cand.signature = signature;
  cand.terms.reserve(m);
  for (const BigInt& x : ints) cand.terms.push_back(to_term(x));
  cand.verdict = validate_candidate(cand.terms);
  out.kind = SolveOutcome::Kind::Candidate;
  out.candidate = std::move(cand);
  return out;
}

Verdict validate_candidate(std::span<const Term> t) {
  Verdict verdict;
  const std::size_t m = t.size();
  if (m == 0) {
    verdict.reasons.push_back("empty candidate");
    return verdict;
  }
  auto at = [&](std::size_t i) { return t[i % m]; };
  for (std::size_t i = 0; i < m; ++i) {
    const Term x = at(i + m - 2);
    const Term y = at(i + m - 1);
    const Term expected = next_term(x, y);
    if (expected != t[i]) {
      verdict.reasons.push_back(pair_str(x, y) + " must be followed by " + std::to_string(expected) + ", not " +
                                std::to_string(t[i]));
    }
  }
  const Term smallest = *std::min_element(t.begin(), t.end());
  if (smallest < 7) verdict.reasons.push_back("smallest term " + std::to_string(smallest) + " is below 7");
  for (std::size_t i = 0; i < m; ++i) {
    if (t[i] != smallest) continue;
    auto odd = [](Term v) { return (v & 1) != 0; };
    const bool first_of_node = !odd(at(i + m - 1)) && odd(t[i]) && odd(at(i + 1));
    const bool second_of_node = !odd(at(i + m - 2)) && odd(at(i + m - 1)) && odd(t[i]);
    if (!first_of_node && !second_of_node) {
      verdict.reasons.push_back("smallest term " + std::to_string(smallest) + " is not a node term");
      break;
    }
  }
  const auto largest_it = std::max_element(t.begin(), t.end());
  const Term largest = *largest_it;
  const std::size_t li = static_cast<std::size_t>(largest_it - t.begin());
  if (largest < 2 || !is_prime(static_cast<std::uint64_t>(largest))) {
    verdict.reasons.push_back("largest term " + std::to_string(largest) + " is not prime");
  } else if (checked_add(at(li + m - 2), at(li + m - 1)) != largest) {
    verdict.reasons.push_back("largest term " + std::to_string(largest) + " does not have signature value 1");
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (gcd(t[i], at(i + 1)) != 1) {
      verdict.reasons.push_back("consecutive terms " + pair_str(t[i], at(i + 1)) + " are not coprime");
    }
  }
  return verdict;
}

RunConfiguration::RunConfiguration(std::vector<int> lengths) : lengths_(std::move(lengths)) {
  if (lengths_.empty()) throw DomainError("run configuration needs at least one run");
  for (int k : lengths_) {
    if (k < 3) throw DomainError("run lengths must be >= 3, got " + std::to_string(k));
  }
}

int RunConfiguration::total_length() const { return std::accumulate(lengths_.begin(), lengths_.end(), 0); }

RunConfiguration RunConfiguration::canonical() const {
  std::vector<Term> as_terms(lengths_.begin(), lengths_.end());
  const std::size_t r = least_rotation(as_terms);
  std::vector<int> out(lengths_.begin(), lengths_.end());
  std::rotate(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(r), out.end());
  return RunConfiguration(std::move(out));
}

bool RunConfiguration::operator==(const RunConfiguration& other) const {
  return canonical().lengths_ == other.canonical().lengths_;
}

namespace {

void check_shapes(const RunConfiguration& config, const DivisorAssignment& divisors, std::size_t min_runs) {
  if (config.runs() < min_runs) throw DomainError("need at least " + std::to_string(min_runs) + " runs");
  if (divisors.size() != config.runs()) throw DomainError("one (p, q) divisor pair is required per run");
}

}  // namespace

Signature signature_from_runs(const RunConfiguration& config, const DivisorAssignment& divisors) {
  check_shapes(config, divisors, 1);
  Signature sig;
  for (std::size_t i = 0; i < config.runs(); ++i) {
    sig.divisors.push_back(divisors[i].p);
    sig.divisors.push_back(divisors[i].q);
    for (int j = 2; j < config.lengths()[i]; ++j) sig.divisors.push_back(2);
  }
  return sig;
}

Matrix<BigInt> run_matrix(const RunConfiguration& config, const DivisorAssignment& divisors) {
  check_shapes(config, divisors, 2);
  const std::size_t n = config.runs();
  const auto& k = config.lengths();
  Matrix<BigInt> a(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t nx = (i + 1) % n;
    const std::size_t r = 2 * i;
    a(r, 2 * i) = 2;
    a(r, 2 * i + 1) = big(jacobsthal(k[i]));
    a(r, 2 * nx) -= big(divisors[nx].p);
    a(r + 1, 2 * i) = 1;
    a(r + 1, 2 * i + 1) = big(jacobsthal(k[i] - 1));
    a(r + 1, 2 * nx) -= big(divisors[nx].q) - 1;
    a(r + 1, 2 * nx + 1) -= pow2(static_cast<unsigned>(k[nx] - 2)) * big(divisors[nx].q);
  }
  return a;
}

ConditionSides nrun_condition(const RunConfiguration& config, const DivisorAssignment& divisors) {
  check_shapes(config, divisors, 2);
  const std::size_t n = config.runs();
  const auto& k = config.lengths();
  int excess = 0;
  for (int ki : k) excess += ki - 2;

  ConditionSides sides;
  sides.lhs = pow2(static_cast<unsigned>(excess));
  for (const NodeDivisors& d : divisors) sides.lhs *= big(d.p) * big(d.q);

  // Run i may select p_{i+1} (dp) and q_i (dq), each dropping its
  // Jacobsthal index by one; p_i and q_i are never both chosen. The only
  // coupling is between neighbouring runs, so the subset sum is the trace
  // of a product of 2x2 transfer matrices indexed by (dp_{i-1}, dp_i).
  using Transfer = std::array<std::array<BigInt, 2>, 2>;
  Transfer acc{{{BigInt(1), BigInt(0)}, {BigInt(0), BigInt(1)}}};
  for (std::size_t i = 0; i < n; ++i) {
    Transfer t{};
    for (int prev = 0; prev < 2; ++prev) {
      for (int dp = 0; dp < 2; ++dp) {
        BigInt w = 0;
        for (int dq = 0; dq < 2; ++dq) {
          if (prev && dq) continue;
          BigInt term = big(jacobsthal(k[i] - dp - dq));
          if (dp) term *= big(divisors[(i + 1) % n].p);
          if (dq) term *= big(divisors[i].q);
          w += term;
        }
        t[prev][dp] = w;
      }
    }
    Transfer next{};
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 2; ++c) next[r][c] = acc[r][0] * t[0][c] + acc[r][1] * t[1][c];
    }
    acc = std::move(next);
  }
  BigInt rhs = acc[0][0] + acc[1][1];
  rhs -= (excess % 2 == 0) ? 1 : -1;
  sides.rhs = std::move(rhs);
  return sides;
}

DivisorReport divisor_predicates(const DivisorAssignment& divisors) {
  DivisorReport report;
  const std::size_t n = divisors.size();
  for (const NodeDivisors& d : divisors) report.ones += (d.p == 1) + (d.q == 1);
  const std::size_t total = 2 * n;
  report.at_least_two_one = report.ones >= 2;
  report.at_least_two_not_one = total - report.ones >= 2;
  report.ones_placement_ok = true;
  if (report.ones == 2) {
    for (std::size_t i = 0; i < n; ++i) {
      if (divisors[i].p != 1 || divisors[i].q != 1) continue;
      const NodeDivisors& next = divisors[(i + 1) % n];
      const bool exception = (next.p == 3 && next.q == 3) || (next.p == 3 && next.q == 5) ||
                             (next.p == 5 && next.q == 3);
      if (!exception) report.ones_placement_ok = false;
    }
  }
  return report;
}

}  // namespace subfib

#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "subfib/engine.hpp"
#include "subfib/jacobsthal.hpp"
#include "subfib/runs.hpp"

namespace subfib {

using BigInt = mpz_class;
using Rational = mpq_class;  // always kept in canonical (reduced) form

template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
  }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

// Fraction-free (Bareiss) determinant.
BigInt determinant(const Matrix<BigInt>& m);

// Basis of the right nullspace over the rationals, one vector per free
// column of the reduced row echelon form.
std::vector<std::vector<Rational>> nullspace(const Matrix<Rational>& m);

// Row i: s_i on the diagonal and -1 in the columns of t_{i-2}, t_{i-1}
// (indices cyclic). Requires at least three entries, all >= 1.
Matrix<BigInt> signature_system(const Signature& signature);

struct Verdict {
  std::vector<std::string> reasons;  // empty means the candidate is a cycle
  bool valid() const { return reasons.empty(); }
};

struct CandidateCycle {
  std::vector<Term> terms;
  Signature signature;
  Verdict verdict;
};

struct SolveOutcome {
  enum class Kind {
    Candidate,   // one-dimensional nullspace with a positive primitive vector
    NoSolution,  // trivial nullspace, or the solution has a non-positive term
    Degenerate,  // nullspace of dimension >= 2
  };
  Kind kind = Kind::NoSolution;
  std::size_t nullity = 0;
  std::optional<CandidateCycle> candidate;
  std::string detail;
};

// Primitive positive integer solution of the signature system, validated.
SolveOutcome solve_signature(const Signature& signature);

// Re-simulates the terms as a cycle and checks the structural lemmas:
// smallest term at least 7 and a node term, largest term prime and equal
// to the sum of its two predecessors, cyclic consecutive coprimality.
Verdict validate_candidate(std::span<const Term> terms);

// Cyclic tuple of run lengths; compared up to rotation.
class RunConfiguration {
 public:
  RunConfiguration() = default;
  // Throws DomainError if empty or any length is below 3.
  explicit RunConfiguration(std::vector<int> lengths);

  const std::vector<int>& lengths() const { return lengths_; }
  std::size_t runs() const { return lengths_.size(); }
  int total_length() const;
  RunConfiguration canonical() const;

  bool operator==(const RunConfiguration& other) const;

 private:
  std::vector<int> lengths_;
};

using DivisorAssignment = std::vector<NodeDivisors>;

// Signature p_1, q_1, 2, ..., 2, p_2, q_2, 2, ... for a configuration.
Signature signature_from_runs(const RunConfiguration& config, const DivisorAssignment& divisors);

// 2n x 2n system in (a_1, d_1, ..., a_n, d_n). Row 2i-1 is
// [2, J_{k_i}, -p_{i+1}] and row 2i is [1, J_{k_i - 1}, 1 - q_{i+1},
// -2^{k_{i+1} - 2} q_{i+1}], shifted two columns per run, indices mod n.
Matrix<BigInt> run_matrix(const RunConfiguration& config, const DivisorAssignment& divisors);

struct ConditionSides {
  BigInt lhs;
  BigInt rhs;
  bool holds() const { return lhs == rhs; }
};

// lhs = 2^{sum(k_i - 2)} prod p_i q_i.
// rhs = sum over subsets with no (p_i, q_i) pair both chosen of
//       prod_i J_{k_i - [p_{i+1} chosen] - [q_i chosen]} * chosen divisors,
//       minus (-1)^{sum(k_i - 2)}.
// lhs - rhs equals the determinant of run_matrix.
ConditionSides nrun_condition(const RunConfiguration& config, const DivisorAssignment& divisors);

struct DivisorReport {
  std::size_t ones = 0;
  bool at_least_two_not_one = false;
  bool at_least_two_one = false;
  // With exactly two ones forming some (p_i, q_i), the next node must be
  // (3,3), (3,5) or (5,3). Vacuously true otherwise.
  bool ones_placement_ok = false;

  bool satisfied() const { return at_least_two_not_one && at_least_two_one && ones_placement_ok; }
};

DivisorReport divisor_predicates(const DivisorAssignment& divisors);

}  // namespace subfib

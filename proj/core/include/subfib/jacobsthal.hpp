#pragma once

#include <cstdint>

namespace subfib {

// Largest index whose Jacobsthal number fits in int64.
inline constexpr int kMaxJacobsthalIndex = 64;

// J_0 = 0, J_1 = 1, J_n = J_{n-1} + 2 J_{n-2}, computed by the recurrence.
// Throws DomainError for n < 0 and OverflowError past kMaxJacobsthalIndex.
std::int64_t jacobsthal(int n);

}  // namespace subfib

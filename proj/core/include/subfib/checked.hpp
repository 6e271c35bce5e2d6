#pragma once

#include <cstdint>
#include <string>

#include "subfib/error.hpp"

namespace subfib {

template <typename T>
T checked_add(T a, T b) {
  T r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("integer overflow in addition");
  return r;
}

template <typename T>
T checked_sub(T a, T b) {
  T r;
  if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("integer overflow in subtraction");
  return r;
}

template <typename T>
T checked_mul(T a, T b) {
  T r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("integer overflow in multiplication");
  return r;
}

// 2^e as T; throws if it does not fit.
template <typename T>
T checked_pow2(unsigned e) {
  if (e >= sizeof(T) * 8 - 1) throw OverflowError("power of two exceeds integer width");
  return T{1} << e;
}

}  // namespace subfib

#pragma once

#include <stdexcept>

namespace shockmix::checked {

template <class T>
constexpr T add(T a, T b) {
  T out{};
  if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("shockmix: integer overflow in addition");
  return out;
}

template <class T>
constexpr T sub(T a, T b) {
  T out{};
  if (__builtin_sub_overflow(a, b, &out)) throw std::overflow_error("shockmix: integer overflow in subtraction");
  return out;
}

template <class T>
constexpr T mul(T a, T b) {
  T out{};
  if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("shockmix: integer overflow in multiplication");
  return out;
}

/// Value-preserving conversion; throws when the value does not fit.
template <class To, class From>
constexpr To narrow(From v) {
  To out{};
  if (__builtin_add_overflow(v, From{0}, &out)) throw std::overflow_error("shockmix: value out of range");
  return out;
}

}  // namespace shockmix::checked

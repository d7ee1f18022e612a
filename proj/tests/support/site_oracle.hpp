#pragma once

// Brute-force reference model that works on explicit 0/1 sites and never
// touches the block algebra. Used to cross-check Configuration, the Lyapunov
// functions and their increments.

#include <cstdint>
#include <utility>
#include <vector>

#include "shockmix/configuration.hpp"

namespace oracle {

using Bits = std::vector<int>;
using Blocks = std::vector<std::pair<std::uint64_t, std::uint64_t>>;

/// 1 0^{n1} 1^{m1} ... 0^{nN} 1^{mN} 0, one guard site on each side.
inline Bits sites_of(const Blocks& blocks) {
  Bits b{1};
  for (auto [n, m] : blocks) {
    b.insert(b.end(), n, 0);
    b.insert(b.end(), m, 1);
  }
  b.push_back(0);
  return b;
}

inline Bits sites_of(const shockmix::Configuration& s) { return sites_of(s.blocks()); }

/// Strips the leading ones and trailing zeros and run-length encodes the rest.
inline Blocks blocks_of(const Bits& bits) {
  std::size_t lo = 0, hi = bits.size();
  while (lo < hi && bits[lo] == 1) ++lo;
  while (hi > lo && bits[hi - 1] == 0) --hi;
  Blocks out;
  std::size_t i = lo;
  while (i < hi) {
    std::uint64_t n = 0, m = 0;
    while (i < hi && bits[i] == 0) ++n, ++i;
    while (i < hi && bits[i] == 1) ++m, ++i;
    out.emplace_back(n, m);
  }
  return out;
}

/// Pairs (zero, one) with the zero to the left of the one.
inline std::int64_t f1(const Bits& bits) {
  std::int64_t zeros = 0, acc = 0;
  for (int b : bits) {
    if (b == 0)
      ++zeros;
    else
      acc += zeros;
  }
  return acc;
}

/// Twice f2: squared counts of zeros left of each one plus squared counts of
/// ones right of each zero.
inline std::int64_t f2_twice(const Bits& bits) {
  std::int64_t acc = 0, zeros = 0;
  for (int b : bits) {
    if (b == 0)
      ++zeros;
    else
      acc += zeros * zeros;
  }
  std::int64_t ones = 0;
  for (auto it = bits.rbegin(); it != bits.rend(); ++it) {
    if (*it == 1)
      ++ones;
    else
      acc += ones * ones;
  }
  return acc;
}

/// Site index i of the j-th discrepancy pair (i, i+1), left to right.
inline std::vector<std::size_t> discrepancy_sites(const Bits& bits) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i + 1 < bits.size(); ++i)
    if (bits[i] != bits[i + 1]) out.push_back(i);
  return out;
}

enum class Action { Exchange, Fill, Empty };

/// Applies an action to the j-th discrepancy. The window is padded first so
/// that the pair never touches the edge of the array.
inline Bits act(Bits bits, std::size_t j, Action a) {
  bits.insert(bits.begin(), 1);
  bits.push_back(0);
  const std::size_t i = discrepancy_sites(bits).at(j);
  switch (a) {
    case Action::Exchange: std::swap(bits[i], bits[i + 1]); break;
    case Action::Fill: bits[i] = bits[i + 1] = 1; break;
    case Action::Empty: bits[i] = bits[i + 1] = 0; break;
  }
  return bits;
}

/// The library move that corresponds to (discrepancy j, action).
inline shockmix::Move move_for(std::size_t j, Action a) {
  using shockmix::Move;
  const bool ten = j % 2 == 0;
  const std::size_t k = ten ? j / 2 : (j + 1) / 2;
  switch (a) {
    case Action::Exchange: return ten ? Move::move_right(k) : Move::move_left(k);
    case Action::Fill: return ten ? Move::add_right(k) : Move::add_left(k);
    case Action::Empty: return ten ? Move::remove_right(k) : Move::remove_left(k);
  }
  return Move::stay();
}

inline Blocks blocks_of(const shockmix::Configuration& s) {
  Blocks out;
  for (auto [n, m] : s.blocks()) out.emplace_back(n, m);
  return out;
}

}  // namespace oracle

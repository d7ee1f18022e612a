#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "shockmix/configuration.hpp"

namespace shockmix {

/// Exact half-integer, stored as twice its value.
class HalfInt {
 public:
  constexpr HalfInt() = default;
  static constexpr HalfInt from_twice(std::int64_t twice) { return HalfInt(twice); }
  static constexpr HalfInt from_int(std::int64_t value) { return HalfInt(2 * value); }

  constexpr std::int64_t twice() const { return twice_; }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }
  double to_double() const { return static_cast<double>(twice_) / 2.0; }
  std::string str() const;

  HalfInt operator-() const { return HalfInt(-twice_); }
  friend HalfInt operator+(HalfInt a, HalfInt b);
  friend HalfInt operator-(HalfInt a, HalfInt b);
  friend constexpr auto operator<=>(const HalfInt&, const HalfInt&) = default;

 private:
  constexpr explicit HalfInt(std::int64_t twice) : twice_(twice) {}
  std::int64_t twice_ = 0;
};

/// Prefix/suffix sums of a configuration with the conventions R_0 = 0 and
/// T_{N+1} = 0. Built once per state so that every per-move increment is O(1).
class BlockSums {
 public:
  explicit BlockSums(const Configuration& s);

  std::size_t num_blocks() const { return n_; }
  /// R_i = n_1 + ... + n_i, i in [0, N].
  std::int64_t R(std::size_t i) const { return R_[i]; }
  /// T_i = m_i + ... + m_N, i in [1, N+1].
  std::int64_t T(std::size_t i) const { return T_[i]; }
  /// sum_{i >= k} m_i R_i, k in [1, N+1].
  std::int64_t ones_weight_from(std::size_t k) const { return mr_[k]; }
  /// sum_{i <= k} n_i T_i, k in [0, N].
  std::int64_t zeros_weight_to(std::size_t k) const { return nt_[k]; }
  /// Twice f_2.
  std::int64_t f2_twice() const { return f2_twice_; }
  std::int64_t f1() const { return mr_[1]; }

 private:
  std::size_t n_;
  std::vector<std::int64_t> R_, T_, mr_, nt_;
  std::int64_t f2_twice_ = 0;
};

struct LyapunovValues {
  std::int64_t f1 = 0;
  HalfInt f2;
  std::int64_t size = 0;
  std::size_t n_blocks = 0;
  std::vector<std::int64_t> R;  // R_0..R_N
  std::vector<std::int64_t> T;  // T_1..T_{N+1}, stored at index i-1
};

LyapunovValues lyapunov_values(const Configuration& s);

/// Number of nearest-neighbour transpositions separating s from the
/// Heaviside class: sum m_i R_i (checked against sum n_i T_i).
std::int64_t f1(const Configuration& s);

/// (sum m_i R_i^2 + sum n_i T_i^2) / 2.
HalfInt f2(const Configuration& s);

std::int64_t delta_f1(const Configuration& s, const Move& mv);
std::int64_t delta_f1(const BlockSums& sums, const Move& mv);

HalfInt delta_f2(const Configuration& s, const Move& mv);
HalfInt delta_f2(const BlockSums& sums, const Move& mv);

struct Relations {
  bool f1_bounds = false;   // |S|/2 <= f1 <= |S|^2/4
  bool f2_bounds = false;   // |S|^2/4 <= f2 <= |S|^3/8
  bool f1_vs_f2 = false;    // f1 <= f2^{3/4}

  bool all() const { return f1_bounds && f2_bounds && f1_vs_f2; }
};

/// Throws std::invalid_argument for the Heaviside class.
Relations check_relations(const Configuration& s);

}  // namespace shockmix

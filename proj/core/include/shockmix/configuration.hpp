#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace shockmix {

/// Kinds of single-site updates acting on a shock configuration.
///
/// The block index `k` of a move refers to 1-blocks; `k = 0` is the
/// semi-infinite block of ones on the left. "Right" moves act on the 10 edge
/// that closes 1-block k, "Left" moves on the 01 edge that opens it.
enum class MoveKind : std::uint8_t {
  MoveRight,    // rightmost 1 of block k hops right
  MoveLeft,     // leftmost 1 of block k hops left
  AddRight,     // the 0 right of block k becomes 1
  AddLeft,      // the 0 left of block k becomes 1
  RemoveRight,  // rightmost 1 of block k becomes 0
  RemoveLeft,   // leftmost 1 of block k becomes 0
  Stay,
};

struct Move {
  MoveKind kind = MoveKind::Stay;
  std::size_t block = 0;

  static constexpr Move move_right(std::size_t k) { return {MoveKind::MoveRight, k}; }
  static constexpr Move move_left(std::size_t k) { return {MoveKind::MoveLeft, k}; }
  static constexpr Move add_right(std::size_t k) { return {MoveKind::AddRight, k}; }
  static constexpr Move add_left(std::size_t k) { return {MoveKind::AddLeft, k}; }
  static constexpr Move remove_right(std::size_t k) { return {MoveKind::RemoveRight, k}; }
  static constexpr Move remove_left(std::size_t k) { return {MoveKind::RemoveLeft, k}; }
  static constexpr Move stay() { return {MoveKind::Stay, 0}; }

  friend constexpr auto operator<=>(const Move&, const Move&) = default;
};

std::string to_string(MoveKind kind);
std::string to_string(const Move& mv);

enum class EdgeType : std::uint8_t {
  OneZero,  // "10": right edge of a 1-block
  ZeroOne,  // "01": left edge of a 1-block
};

struct Discrepancy {
  EdgeType type;
  std::size_t block;

  friend constexpr bool operator==(const Discrepancy&, const Discrepancy&) = default;
};

/// Finite window of sites. Everything left of the window is 1 and
/// everything right of it is 0.
struct SiteWindow {
  std::int64_t origin = 0;
  std::vector<std::uint8_t> values;

  static SiteWindow parse(std::string_view bits);
  std::string str() const;

  friend bool operator==(const SiteWindow&, const SiteWindow&) = default;
};

struct BlockPair {
  std::int64_t zeros;
  std::int64_t ones;
};

/// Translation class of a shock profile
///
///     ...111 0^{n_1} 1^{m_1} 0^{n_2} 1^{m_2} ... 0^{n_N} 1^{m_N} 000...
///
/// stored in canonical form (no empty blocks). N = 0 is the Heaviside class.
class Configuration {
 public:
  using Length = std::uint64_t;

  /// Heaviside class.
  Configuration();

  static Configuration heaviside() { return Configuration(); }
  static Configuration from_blocks(const std::vector<BlockPair>& pairs);
  static Configuration from_sites(const SiteWindow& window);
  static Configuration parse(std::string_view text);

  SiteWindow to_sites() const;
  std::string str() const;

  /// Number of finite 1-blocks.
  std::size_t num_blocks() const { return (runs_.size() - 2) / 2; }
  bool is_heaviside() const { return runs_.size() == 2; }

  /// Length n_i of the i-th 0-block, i in [1, N].
  Length zeros(std::size_t i) const { return runs_[2 * i - 1]; }
  /// Length m_k of the k-th 1-block, k in [1, N].
  Length ones(std::size_t k) const { return runs_[2 * k]; }

  /// |S| = R_N + T_1.
  Length size() const;

  std::vector<std::pair<Length, Length>> blocks() const;

  /// 2N+1 discrepancies in left-to-right site order.
  std::vector<Discrepancy> discrepancies() const;
  std::size_t num_discrepancies() const { return 2 * num_blocks() + 1; }

  bool is_valid(const Move& mv) const;

  /// In-place version of apply_move; the result stays canonical.
  void apply(const Move& mv);

  friend auto operator<=>(const Configuration&, const Configuration&) = default;

 private:
  // runs_ = {inf, n_1, m_1, ..., n_N, m_N, inf}; runs alternate 1,0,1,...,0.
  std::vector<Length> runs_;

  void shift_boundary_right(std::size_t b);
  void shift_boundary_left(std::size_t b);
  void exchange_at_boundary(std::size_t b);
};

Configuration from_blocks(const std::vector<BlockPair>& pairs);
Configuration from_sites(const SiteWindow& window);
SiteWindow to_sites(const Configuration& s);
std::vector<Discrepancy> enumerate_discrepancies(const Configuration& s);

/// Canonical successor of `s` under `mv`. Throws std::invalid_argument when
/// the move does not apply to `s` (e.g. MoveLeft(0)).
Configuration apply_move(const Configuration& s, const Move& mv);

}  // namespace shockmix

template <>
struct std::hash<shockmix::Configuration> {
  std::size_t operator()(const shockmix::Configuration& s) const noexcept;
};

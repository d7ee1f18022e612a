#include "shockmix/configuration.hpp"

#include <charconv>
#include <limits>
#include <stdexcept>

#include "shockmix/checked.hpp"

namespace shockmix {

namespace {

constexpr Configuration::Length kInfinite = std::numeric_limits<Configuration::Length>::max();

Configuration::Length grow(Configuration::Length x) {
  if (x == kInfinite) return x;
  if (x + 1 == kInfinite) throw std::overflow_error("shockmix: block length overflow");
  return x + 1;
}

Configuration::Length shrink(Configuration::Length x) { return x == kInfinite ? x : x - 1; }

Configuration::Length merge(Configuration::Length a, Configuration::Length b) {
  if (a == kInfinite || b == kInfinite) return kInfinite;
  const auto sum = checked::add(a, b);
  if (sum == kInfinite) throw std::overflow_error("shockmix: block length overflow");
  return sum;
}

}  // namespace

std::string to_string(MoveKind kind) {
  switch (kind) {
    case MoveKind::MoveRight: return "MoveRight";
    case MoveKind::MoveLeft: return "MoveLeft";
    case MoveKind::AddRight: return "AddRight";
    case MoveKind::AddLeft: return "AddLeft";
    case MoveKind::RemoveRight: return "RemoveRight";
    case MoveKind::RemoveLeft: return "RemoveLeft";
    case MoveKind::Stay: return "Stay";
  }
  return "?";
}

std::string to_string(const Move& mv) {
  if (mv.kind == MoveKind::Stay) return "Stay";
  return to_string(mv.kind) + "(" + std::to_string(mv.block) + ")";
}

SiteWindow SiteWindow::parse(std::string_view bits) {
  SiteWindow w;
  w.values.reserve(bits.size());
  for (char c : bits) {
    if (c != '0' && c != '1') throw std::invalid_argument("site window must contain only 0 and 1");
    w.values.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return w;
}

std::string SiteWindow::str() const {
  std::string out;
  out.reserve(values.size());
  for (auto v : values) out.push_back(v ? '1' : '0');
  return out;
}

Configuration::Configuration() : runs_{kInfinite, kInfinite} {}

Configuration Configuration::from_blocks(const std::vector<BlockPair>& pairs) {
  Configuration s;
  s.runs_.clear();
  s.runs_.reserve(2 * pairs.size() + 2);
  s.runs_.push_back(kInfinite);
  for (const auto& [zeros, ones] : pairs) {
    if (zeros < 1 || ones < 1) throw std::invalid_argument("block lengths must be positive");
    s.runs_.push_back(static_cast<Length>(zeros));
    s.runs_.push_back(static_cast<Length>(ones));
  }
  s.runs_.push_back(kInfinite);
  return s;
}

Configuration Configuration::from_sites(const SiteWindow& window) {
  const auto& v = window.values;
  if (v.size() < 2 || v.front() != 1 || v.back() != 0)
    throw std::invalid_argument("site window must start with 1 and end with 0");

  std::size_t lo = 0;
  while (v[lo] == 1) ++lo;
  std::size_t hi = v.size() - 1;
  while (v[hi] == 0) --hi;

  std::vector<BlockPair> pairs;
  if (hi < lo) return Configuration();
  std::size_t i = lo;
  while (i <= hi) {
    std::int64_t zeros = 0;
    while (v[i] == 0) ++zeros, ++i;
    std::int64_t ones = 0;
    while (i <= hi && v[i] == 1) ++ones, ++i;
    pairs.push_back({zeros, ones});
  }
  return from_blocks(pairs);
}

Configuration Configuration::parse(std::string_view text) {
  std::vector<BlockPair> pairs;
  auto trim = [](std::string_view sv) {
    while (!sv.empty() && (sv.front() == ' ' || sv.front() == '\t')) sv.remove_prefix(1);
    while (!sv.empty() && (sv.back() == ' ' || sv.back() == '\t' || sv.back() == '\n')) sv.remove_suffix(1);
    return sv;
  };
  text = trim(text);
  if (text.empty()) return Configuration();

  auto parse_int = [](std::string_view sv) {
    std::int64_t value = 0;
    const auto* end = sv.data() + sv.size();
    auto [ptr, ec] = std::from_chars(sv.data(), end, value);
    if (ec != std::errc() || ptr != end || sv.empty())
      throw std::invalid_argument("bad block length '" + std::string(sv) + "'");
    return value;
  };

  while (true) {
    const auto comma = text.find(',');
    const auto item = trim(text.substr(0, comma));
    const auto colon = item.find(':');
    if (colon == std::string_view::npos) throw std::invalid_argument("expected n:m pair, got '" + std::string(item) + "'");
    pairs.push_back({parse_int(trim(item.substr(0, colon))), parse_int(trim(item.substr(colon + 1)))});
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return from_blocks(pairs);
}

SiteWindow Configuration::to_sites() const {
  SiteWindow w;
  w.values.push_back(1);
  for (std::size_t i = 1; i + 1 < runs_.size(); ++i) {
    const std::uint8_t bit = (i % 2 == 0) ? 1 : 0;
    w.values.insert(w.values.end(), runs_[i], bit);
  }
  w.values.push_back(0);
  return w;
}

std::string Configuration::str() const {
  std::string out;
  for (std::size_t i = 1; i <= num_blocks(); ++i) {
    if (i > 1) out.push_back(',');
    out += std::to_string(zeros(i));
    out.push_back(':');
    out += std::to_string(ones(i));
  }
  return out;
}

Configuration::Length Configuration::size() const {
  Length total = 0;
  for (std::size_t i = 1; i + 1 < runs_.size(); ++i) total = checked::add(total, runs_[i]);
  return total;
}

std::vector<std::pair<Configuration::Length, Configuration::Length>> Configuration::blocks() const {
  std::vector<std::pair<Length, Length>> out;
  out.reserve(num_blocks());
  for (std::size_t i = 1; i <= num_blocks(); ++i) out.emplace_back(zeros(i), ones(i));
  return out;
}

std::vector<Discrepancy> Configuration::discrepancies() const {
  std::vector<Discrepancy> out;
  out.reserve(num_discrepancies());
  out.push_back({EdgeType::OneZero, 0});
  for (std::size_t k = 1; k <= num_blocks(); ++k) {
    out.push_back({EdgeType::ZeroOne, k});
    out.push_back({EdgeType::OneZero, k});
  }
  return out;
}

bool Configuration::is_valid(const Move& mv) const {
  switch (mv.kind) {
    case MoveKind::Stay: return true;
    case MoveKind::MoveRight:
    case MoveKind::AddRight:
    case MoveKind::RemoveRight: return mv.block <= num_blocks();
    case MoveKind::MoveLeft:
    case MoveKind::AddLeft:
    case MoveKind::RemoveLeft: return mv.block >= 1 && mv.block <= num_blocks();
  }
  return false;
}

// Boundary b separates run b from run b+1.  The 10 edge of 1-block k is
// boundary 2k, the 01 edge of 1-block k is boundary 2k-1.

void Configuration::shift_boundary_right(std::size_t b) {
  runs_[b] = grow(runs_[b]);
  runs_[b + 1] = shrink(runs_[b + 1]);
  if (runs_[b + 1] == 0) {
    runs_[b] = merge(runs_[b], runs_[b + 2]);
    runs_.erase(runs_.begin() + static_cast<std::ptrdiff_t>(b + 1), runs_.begin() + static_cast<std::ptrdiff_t>(b + 3));
  }
}

void Configuration::shift_boundary_left(std::size_t b) {
  runs_[b] = shrink(runs_[b]);
  runs_[b + 1] = grow(runs_[b + 1]);
  if (runs_[b] == 0) {
    runs_[b - 1] = merge(runs_[b - 1], runs_[b + 1]);
    runs_.erase(runs_.begin() + static_cast<std::ptrdiff_t>(b), runs_.begin() + static_cast<std::ptrdiff_t>(b + 2));
  }
}

void Configuration::exchange_at_boundary(std::size_t b) {
  // [a][c] -> [a-1][1][1][c-1], then absorb whichever side emptied.
  runs_[b] = shrink(runs_[b]);
  runs_[b + 1] = shrink(runs_[b + 1]);
  const Length single[2] = {1, 1};
  runs_.insert(runs_.begin() + static_cast<std::ptrdiff_t>(b + 1), std::begin(single), std::end(single));
  if (runs_[b + 3] == 0) {
    runs_[b + 2] = merge(runs_[b + 2], runs_[b + 4]);
    runs_.erase(runs_.begin() + static_cast<std::ptrdiff_t>(b + 3), runs_.begin() + static_cast<std::ptrdiff_t>(b + 5));
  }
  if (runs_[b] == 0) {
    runs_[b - 1] = merge(runs_[b - 1], runs_[b + 1]);
    runs_.erase(runs_.begin() + static_cast<std::ptrdiff_t>(b), runs_.begin() + static_cast<std::ptrdiff_t>(b + 2));
  }
}

void Configuration::apply(const Move& mv) {
  if (!is_valid(mv)) throw std::invalid_argument("move " + to_string(mv) + " is not valid for configuration '" + str() + "'");
  const std::size_t k = mv.block;
  switch (mv.kind) {
    case MoveKind::Stay: return;
    case MoveKind::MoveRight: exchange_at_boundary(2 * k); return;
    case MoveKind::MoveLeft: exchange_at_boundary(2 * k - 1); return;
    case MoveKind::AddRight: shift_boundary_right(2 * k); return;
    case MoveKind::RemoveRight: shift_boundary_left(2 * k); return;
    case MoveKind::AddLeft: shift_boundary_left(2 * k - 1); return;
    case MoveKind::RemoveLeft: shift_boundary_right(2 * k - 1); return;
  }
}

Configuration from_blocks(const std::vector<BlockPair>& pairs) { return Configuration::from_blocks(pairs); }
Configuration from_sites(const SiteWindow& window) { return Configuration::from_sites(window); }
SiteWindow to_sites(const Configuration& s) { return s.to_sites(); }
std::vector<Discrepancy> enumerate_discrepancies(const Configuration& s) { return s.discrepancies(); }

Configuration apply_move(const Configuration& s, const Move& mv) {
  Configuration out = s;
  out.apply(mv);
  return out;
}

}  // namespace shockmix

std::size_t std::hash<shockmix::Configuration>::operator()(const shockmix::Configuration& s) const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (std::size_t i = 1; i <= s.num_blocks(); ++i) {
    h = (h ^ s.zeros(i)) * 0x100000001b3ULL;
    h = (h ^ s.ones(i)) * 0x100000001b3ULL;
  }
  return h;
}

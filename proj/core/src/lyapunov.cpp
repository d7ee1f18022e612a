#include "shockmix/lyapunov.hpp"

#include <cmath>
#include <stdexcept>

#include "shockmix/checked.hpp"

namespace shockmix {

namespace {

__extension__ using i128 = __int128;

std::int64_t sq(std::int64_t x) { return checked::mul(x, x); }

void require_valid(std::size_t n_blocks, const Move& mv) {
  bool ok = true;
  switch (mv.kind) {
    case MoveKind::Stay: break;
    case MoveKind::MoveRight:
    case MoveKind::AddRight:
    case MoveKind::RemoveRight: ok = mv.block <= n_blocks; break;
    case MoveKind::MoveLeft:
    case MoveKind::AddLeft:
    case MoveKind::RemoveLeft: ok = mv.block >= 1 && mv.block <= n_blocks; break;
  }
  if (!ok) throw std::invalid_argument("move " + to_string(mv) + " is not valid for N = " + std::to_string(n_blocks));
}

// a <= b for products of nonnegative integers that may exceed 128 bits.
bool product_leq(std::initializer_list<i128> lhs, std::initializer_list<i128> rhs) {
  auto product = [](std::initializer_list<i128> xs, bool& overflow) {
    i128 acc = 1;
    for (auto x : xs)
      if (__builtin_mul_overflow(acc, x, &acc)) overflow = true;
    return acc;
  };
  bool overflow = false;
  const i128 a = product(lhs, overflow);
  const i128 b = product(rhs, overflow);
  if (!overflow) return a <= b;
  long double la = 0, lb = 0;
  for (auto x : lhs) la += std::log(static_cast<long double>(x));
  for (auto x : rhs) lb += std::log(static_cast<long double>(x));
  return la <= lb;
}

}  // namespace

std::string HalfInt::str() const {
  if (is_integer()) return std::to_string(twice_ / 2);
  return std::to_string(twice_) + "/2";
}

HalfInt operator+(HalfInt a, HalfInt b) { return HalfInt(checked::add(a.twice_, b.twice_)); }
HalfInt operator-(HalfInt a, HalfInt b) { return HalfInt(checked::sub(a.twice_, b.twice_)); }

BlockSums::BlockSums(const Configuration& s)
    : n_(s.num_blocks()), R_(n_ + 1, 0), T_(n_ + 2, 0), mr_(n_ + 2, 0), nt_(n_ + 1, 0) {
  for (std::size_t i = 1; i <= n_; ++i)
    R_[i] = checked::add(R_[i - 1], checked::narrow<std::int64_t>(s.zeros(i)));
  for (std::size_t i = n_; i >= 1; --i)
    T_[i] = checked::add(T_[i + 1], checked::narrow<std::int64_t>(s.ones(i)));
  for (std::size_t i = n_; i >= 1; --i)
    mr_[i] = checked::add(mr_[i + 1], checked::mul(checked::narrow<std::int64_t>(s.ones(i)), R_[i]));
  for (std::size_t i = 1; i <= n_; ++i)
    nt_[i] = checked::add(nt_[i - 1], checked::mul(checked::narrow<std::int64_t>(s.zeros(i)), T_[i]));
  for (std::size_t i = 1; i <= n_; ++i) {
    f2_twice_ = checked::add(f2_twice_, checked::mul(checked::narrow<std::int64_t>(s.ones(i)), sq(R_[i])));
    f2_twice_ = checked::add(f2_twice_, checked::mul(checked::narrow<std::int64_t>(s.zeros(i)), sq(T_[i])));
  }
  if (nt_[n_] != mr_[1]) throw std::logic_error("f1: sum m_i R_i and sum n_i T_i disagree");
}

LyapunovValues lyapunov_values(const Configuration& s) {
  const BlockSums sums(s);
  LyapunovValues v;
  v.f1 = sums.f1();
  v.f2 = HalfInt::from_twice(sums.f2_twice());
  v.n_blocks = sums.num_blocks();
  v.size = checked::narrow<std::int64_t>(s.size());
  for (std::size_t i = 0; i <= v.n_blocks; ++i) v.R.push_back(sums.R(i));
  for (std::size_t i = 1; i <= v.n_blocks + 1; ++i) v.T.push_back(sums.T(i));
  return v;
}

std::int64_t f1(const Configuration& s) { return BlockSums(s).f1(); }

HalfInt f2(const Configuration& s) { return HalfInt::from_twice(BlockSums(s).f2_twice()); }

std::int64_t delta_f1(const BlockSums& b, const Move& mv) {
  require_valid(b.num_blocks(), mv);
  const std::size_t k = mv.block;
  switch (mv.kind) {
    case MoveKind::Stay: return 0;
    case MoveKind::MoveRight: return 1;
    case MoveKind::MoveLeft: return -1;
    case MoveKind::AddLeft: return b.R(k) - b.T(k) - 1;
    case MoveKind::RemoveLeft: return -b.R(k) + b.T(k) - 1;
    case MoveKind::AddRight: return b.R(k) - b.T(k + 1);
    case MoveKind::RemoveRight: return -b.R(k) + b.T(k + 1);
  }
  return 0;
}

std::int64_t delta_f1(const Configuration& s, const Move& mv) { return delta_f1(BlockSums(s), mv); }

HalfInt delta_f2(const BlockSums& b, const Move& mv) {
  require_valid(b.num_blocks(), mv);
  const std::size_t k = mv.block;
  std::int64_t twice = 0;
  switch (mv.kind) {
    case MoveKind::Stay: break;
    case MoveKind::MoveRight: twice = 2 * (1 + b.R(k) + b.T(k + 1)); break;
    case MoveKind::MoveLeft: twice = 2 * (1 - b.R(k) - b.T(k)); break;
    case MoveKind::AddRight: {
      const auto r = b.R(k), t = b.T(k + 1);
      twice = r + t + sq(r) - sq(t) - 2 * b.ones_weight_from(k + 1) + 2 * b.zeros_weight_to(k);
      break;
    }
    case MoveKind::RemoveRight: {
      const auto r = b.R(k), t = b.T(k + 1);
      twice = r + t - sq(r) + sq(t) + 2 * b.ones_weight_from(k + 1) - 2 * b.zeros_weight_to(k);
      break;
    }
    case MoveKind::AddLeft: {
      const auto r = b.R(k), t = b.T(k);
      twice = -r - t + sq(r) - sq(t) - 2 * b.ones_weight_from(k) + 2 * b.zeros_weight_to(k);
      break;
    }
    case MoveKind::RemoveLeft: {
      const auto r = b.R(k), t = b.T(k);
      twice = -r - t - sq(r) + sq(t) + 2 * b.ones_weight_from(k) - 2 * b.zeros_weight_to(k);
      break;
    }
  }
  return HalfInt::from_twice(twice);
}

HalfInt delta_f2(const Configuration& s, const Move& mv) { return delta_f2(BlockSums(s), mv); }

Relations check_relations(const Configuration& s) {
  if (s.is_heaviside()) throw std::invalid_argument("check_relations: Heaviside class has no nontrivial part");
  const BlockSums b(s);
  const i128 size = static_cast<i128>(s.size());
  const i128 g1 = b.f1();
  const i128 h = b.f2_twice();  // 2 f2

  Relations out;
  out.f1_bounds = product_leq({size}, {2, g1}) && product_leq({4, g1}, {size, size});
  out.f2_bounds = product_leq({size, size}, {2, h}) && product_leq({4, h}, {size, size, size});
  // f1^4 <= f2^3  <=>  8 f1^4 <= h^3
  out.f1_vs_f2 = product_leq({8, g1, g1, g1, g1}, {h, h, h});
  return out;
}

}  // namespace shockmix

#include "shockmix/kernel.hpp"

#include <algorithm>
#include <limits>

namespace shockmix {

namespace {

Move exchange_move(const Discrepancy& d) {
  return d.type == EdgeType::OneZero ? Move::move_right(d.block) : Move::move_left(d.block);
}
Move fill_move(const Discrepancy& d) {
  return d.type == EdgeType::OneZero ? Move::add_right(d.block) : Move::add_left(d.block);
}
Move empty_move(const Discrepancy& d) {
  return d.type == EdgeType::OneZero ? Move::remove_right(d.block) : Move::remove_left(d.block);
}

// Discrepancy j in left-to-right order: 0 -> 10 edge of block 0,
// 2k-1 -> 01 edge of block k, 2k -> 10 edge of block k.
Discrepancy discrepancy_at(std::size_t j) {
  if (j % 2 == 0) return {EdgeType::OneZero, j / 2};
  return {EdgeType::ZeroOne, (j + 1) / 2};
}

}  // namespace

template <class Scalar>
TransitionDistribution<Scalar> transition_distribution(const Configuration& s, const BasicModelParams<Scalar>& params) {
  params.validate();
  const Scalar zero(0), one(1), two(2);
  const Scalar edges(static_cast<std::int64_t>(s.num_discrepancies()));
  const Scalar excl = (one - params.beta) / edges;
  const Scalar voter = params.beta / (two * edges);
  const Scalar q = params.q();

  TransitionDistribution<Scalar> law;
  law.entries.reserve(3 * s.num_discrepancies() + 1);
  Scalar stay(0);
  for (const auto& d : s.discrepancies()) {
    const Scalar accept = d.type == EdgeType::OneZero ? q : params.p;
    const Scalar hop = excl * accept;
    if (hop > zero) law.entries.push_back({exchange_move(d), apply_move(s, exchange_move(d)), hop});
    stay += excl * (one - accept);
    if (voter > zero) {
      law.entries.push_back({fill_move(d), apply_move(s, fill_move(d)), voter});
      law.entries.push_back({empty_move(d), apply_move(s, empty_move(d)), voter});
    }
  }
  if (stay > zero) law.entries.push_back({Move::stay(), s, stay});
  return law;
}

template TransitionDistribution<double> transition_distribution(const Configuration&, const ModelParams&);
template TransitionDistribution<Rational> transition_distribution(const Configuration&, const ExactModelParams&);

Move sample_move(const Configuration& s, const ModelParams& params, CounterRng& rng) {
  const Discrepancy d = discrepancy_at(rng.below(s.num_discrepancies()));
  const double u = rng.uniform();
  if (u < params.beta) return u < 0.5 * params.beta ? fill_move(d) : empty_move(d);
  const double accept = d.type == EdgeType::OneZero ? 1.0 - params.p : params.p;
  return rng.uniform() < accept ? exchange_move(d) : Move::stay();
}

Move step_in_place(Configuration& s, const ModelParams& params, CounterRng& rng) {
  const Move mv = sample_move(s, params, rng);
  s.apply(mv);
  return mv;
}

Configuration sample_step(const Configuration& s, const ModelParams& params, CounterRng& rng) {
  return apply_move(s, sample_move(s, params, rng));
}

RateTable rate_table(const Configuration& s, const ModelParams& params) {
  params.validate();
  const double hop_right = (1.0 - params.beta) * (1.0 - params.p);
  const double hop_left = (1.0 - params.beta) * params.p;
  const double flip = 0.5 * params.beta;

  RateTable table;
  table.entries.reserve(3 * s.num_discrepancies());
  for (const auto& d : s.discrepancies()) {
    const bool ten = d.type == EdgeType::OneZero;
    const double hop = ten ? hop_right : hop_left;
    if (hop > 0) table.entries.push_back({exchange_move(d), hop});
    if (flip > 0) {
      table.entries.push_back({fill_move(d), flip});
      table.entries.push_back({empty_move(d), flip});
    }
    table.idle_rate += ten ? hop_left : hop_right;
  }
  for (const auto& e : table.entries) table.total_rate += e.rate;
  return table;
}

JumpEvent gillespie_step(const Configuration& s, const ModelParams& params, CounterRng& rng) {
  const RateTable table = rate_table(s, params);
  if (!(table.total_rate > 0)) throw std::domain_error("gillespie_step: total rate is zero");
  const double holding = rng.exponential(table.total_rate);
  const double target = rng.uniform() * table.total_rate;
  double acc = 0;
  const RateEntry* chosen = &table.entries.back();
  for (const auto& e : table.entries) {
    acc += e.rate;
    if (target < acc) {
      chosen = &e;
      break;
    }
  }
  return {chosen->move, apply_move(s, chosen->move), holding};
}

double gillespie_step_in_place(Configuration& s, const ModelParams& params, CounterRng& rng) {
  const std::size_t n = s.num_blocks();
  const double hop_right = (1.0 - params.beta) * (1.0 - params.p);
  const double hop_left = (1.0 - params.beta) * params.p;
  const double ten_rate = hop_right + params.beta;
  const double zero_one_rate = hop_left + params.beta;
  const double ten_total = static_cast<double>(n + 1) * ten_rate;
  const double total = ten_total + static_cast<double>(n) * zero_one_rate;
  if (!(total > 0)) throw std::domain_error("gillespie_step: total rate is zero");

  const double holding = rng.exponential(total);
  double x = rng.uniform() * total;
  Discrepancy d{};
  double hop = 0;
  double edge_rate = 0;
  if (n == 0 || x < ten_total) {
    const auto k = std::min<std::size_t>(static_cast<std::size_t>(x / ten_rate), n);
    x -= static_cast<double>(k) * ten_rate;
    d = {EdgeType::OneZero, k};
    hop = hop_right;
    edge_rate = ten_rate;
  } else {
    x -= ten_total;
    const auto k = std::min<std::size_t>(static_cast<std::size_t>(x / zero_one_rate), n - 1);
    x -= static_cast<double>(k) * zero_one_rate;
    d = {EdgeType::ZeroOne, k + 1};
    hop = hop_left;
    edge_rate = zero_one_rate;
  }
  x = std::clamp(x, 0.0, edge_rate);
  if (x < hop)
    s.apply(exchange_move(d));
  else if (x < hop + 0.5 * params.beta)
    s.apply(fill_move(d));
  else
    s.apply(empty_move(d));
  return holding;
}

JumpEvent skeleton_step(const Configuration& s, const ModelParams& params, CounterRng& rng) {
  params.validate();
  const double p = params.p, q = 1.0 - params.p, beta = params.beta;
  // Clocks of the edge (x, x+1): particle x -> x+1, particle x+1 -> x,
  // x+1 copies x, x copies x+1.
  double first = std::numeric_limits<double>::infinity();
  Move chosen = Move::stay();
  auto race = [&](double rate, const Move& outcome) {
    if (!(rate > 0)) return;
    const double t = rng.exponential(rate);
    if (t < first) {
      first = t;
      chosen = outcome;
    }
  };
  for (const auto& d : s.discrepancies()) {
    const bool ten = d.type == EdgeType::OneZero;
    race((1.0 - beta) * q, ten ? exchange_move(d) : Move::stay());
    race((1.0 - beta) * p, ten ? Move::stay() : exchange_move(d));
    race(0.5 * beta, ten ? fill_move(d) : empty_move(d));
    race(0.5 * beta, ten ? empty_move(d) : fill_move(d));
  }
  return {chosen, apply_move(s, chosen), first};
}

}  // namespace shockmix

#pragma once

#include <stdexcept>
#include <vector>

#include "shockmix/configuration.hpp"
#include "shockmix/lyapunov.hpp"
#include "shockmix/params.hpp"
#include "shockmix/rng.hpp"

namespace shockmix {

// ---------------------------------------------------------------------------
// Discrete-time chain HP(beta, p)
//
// One step: pick one of the 2N+1 discrepancies uniformly. With probability
// 1 - beta make an exclusion step (a 10 edge exchanges with probability q,
// a 01 edge with probability p, otherwise nothing happens); with probability
// beta make a voter step (the pair becomes 11 or 00 with probability 1/2).
// ---------------------------------------------------------------------------

template <class Scalar>
struct Transition {
  Move move;
  Configuration successor;
  Scalar probability;
};

/// Full one-step law. Entries have strictly positive probability. Distinct
/// moves reaching the same class are kept apart; all rejected exchanges are
/// folded into a single Stay entry.
template <class Scalar>
struct TransitionDistribution {
  std::vector<Transition<Scalar>> entries;

  Scalar total() const {
    Scalar acc(0);
    for (const auto& e : entries) acc += e.probability;
    return acc;
  }
};

template <class Scalar>
TransitionDistribution<Scalar> transition_distribution(const Configuration& s, const BasicModelParams<Scalar>& params);

extern template TransitionDistribution<double> transition_distribution(const Configuration&, const ModelParams&);
extern template TransitionDistribution<Rational> transition_distribution(const Configuration&, const ExactModelParams&);

/// Draws the move of one discrete step.
Move sample_move(const Configuration& s, const ModelParams& params, CounterRng& rng);

/// Advances `s` by one discrete step and returns the move taken.
Move step_in_place(Configuration& s, const ModelParams& params, CounterRng& rng);

Configuration sample_step(const Configuration& s, const ModelParams& params, CounterRng& rng);

template <class Scalar>
Scalar as_scalar(std::int64_t v) {
  return Scalar(v);
}

template <class Scalar>
Scalar as_scalar(HalfInt v) {
  if constexpr (std::is_same_v<Scalar, Rational>)
    return Rational(v.twice(), 2);
  else
    return static_cast<Scalar>(v.to_double());
}

/// E[g(next) - g(s)] by enumeration of the one-step law.
template <class Scalar, class Fn>
Scalar exact_drift(const Configuration& s, const BasicModelParams<Scalar>& params, Fn&& g) {
  const auto law = transition_distribution(s, params);
  const Scalar base = as_scalar<Scalar>(g(s));
  Scalar acc(0);
  for (const auto& e : law.entries) acc += e.probability * (as_scalar<Scalar>(g(e.successor)) - base);
  return acc;
}

/// E[(g(next) - g(s))^2] by enumeration of the one-step law.
template <class Scalar, class Fn>
Scalar exact_second_moment(const Configuration& s, const BasicModelParams<Scalar>& params, Fn&& g) {
  const auto law = transition_distribution(s, params);
  const Scalar base = as_scalar<Scalar>(g(s));
  Scalar acc(0);
  for (const auto& e : law.entries) {
    const Scalar d = as_scalar<Scalar>(g(e.successor)) - base;
    acc += e.probability * d * d;
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Continuous time
// ---------------------------------------------------------------------------

struct RateEntry {
  Move move;
  double rate;
};

/// Rates of the moves that change the configuration. A 10 edge hops right at
/// rate (1-beta)q, a 01 edge hops left at rate (1-beta)p, and every edge has
/// two voter updates at rate beta/2 each. `idle_rate` collects the attempted
/// exchanges that find the target site occupied; total_rate + idle_rate is
/// always 2N+1.
struct RateTable {
  std::vector<RateEntry> entries;
  double total_rate = 0;
  double idle_rate = 0;

  double attempt_rate() const { return total_rate + idle_rate; }
};

RateTable rate_table(const Configuration& s, const ModelParams& params);

struct JumpEvent {
  Move move;
  Configuration successor;
  double holding_time;
};

/// Jump-chain step: exponential holding time with rate total_rate, move
/// chosen proportionally to its rate. Throws std::domain_error on zero rate.
JumpEvent gillespie_step(const Configuration& s, const ModelParams& params, CounterRng& rng);

/// Same as gillespie_step but updates `s` in place; returns the holding time.
double gillespie_step_in_place(Configuration& s, const ModelParams& params, CounterRng& rng);

/// Attempted-jump step: races the four Poisson clocks of every discrepancy
/// edge (two exclusion clocks, two voter clocks) and returns the first one to
/// ring, including exchange attempts that find the target occupied (Stay).
JumpEvent skeleton_step(const Configuration& s, const ModelParams& params, CounterRng& rng);

}  // namespace shockmix

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "shockmix/configuration.hpp"
#include "shockmix/fit.hpp"
#include "shockmix/params.hpp"
#include "shockmix/rng.hpp"

namespace shockmix {

/// Raised when an estimator has too little uncensored data to work with.
class InsufficientData : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Single trajectories
// ---------------------------------------------------------------------------

/// Discrete steps (Stay steps included) until the chain first enters the
/// Heaviside class, or nullopt if it has not done so after `cap` steps.
/// A Heaviside start gives 0.
std::optional<std::uint64_t> hitting_time_discrete(Configuration s0, const ModelParams& params, std::uint64_t cap,
                                                   CounterRng& rng);

struct ContinuousHit {
  double time;
  std::uint64_t jumps;
};

/// Gillespie time of first entry to the Heaviside class, nullopt past `cap`.
std::optional<ContinuousHit> hitting_time_continuous(Configuration s0, const ModelParams& params, double cap,
                                                     CounterRng& rng);

/// Steps of the six-move quadrant walk from (n, m) until an axis is reached.
/// Same law as hitting_time_discrete from [(n, m)] at beta = 1.
std::optional<std::uint64_t> quadrant_hitting(std::int64_t n, std::int64_t m, std::uint64_t cap, CounterRng& rng);

// ---------------------------------------------------------------------------
// Batches
// ---------------------------------------------------------------------------

enum class SimMode { Discrete, Continuous, Quadrant };
std::string to_string(SimMode mode);
SimMode parse_mode(std::string_view text);

struct SurvivalPoint {
  double t;
  double survival;  // P(tau > t)
};

struct HittingStats {
  Configuration s0;
  ModelParams params;
  SimMode mode = SimMode::Discrete;
  std::uint64_t n_trials = 0;
  double cap = 0;
  std::uint64_t seed = 0;
  /// Uncensored hitting times, sorted ascending.
  std::vector<double> samples;
  std::uint64_t n_censored = 0;
  /// Log grid with 64 points per decade on [1, cap].
  std::vector<SurvivalPoint> survival;

  double hit_fraction() const { return static_cast<double>(samples.size()) / static_cast<double>(n_trials); }
  double censored_fraction() const { return static_cast<double>(n_censored) / static_cast<double>(n_trials); }
};

/// Runs `n_trials` independent trials; trial i draws from CounterRng(seed, i),
/// so the result does not depend on `threads`. Cap is in steps for the
/// discrete and quadrant modes and in time for the continuous mode. Quadrant
/// mode requires N = 1 and beta = 1.
HittingStats batch(const Configuration& s0, const ModelParams& params, std::uint64_t n_trials, double cap,
                   std::uint64_t seed, SimMode mode, unsigned threads = 1);

/// Empirical survival on the standard log grid.
std::vector<SurvivalPoint> survival_curve(const std::vector<double>& sorted_samples, std::uint64_t n_censored,
                                          double cap);

// ---------------------------------------------------------------------------
// Estimators
// ---------------------------------------------------------------------------

struct TailWindow {
  double t_min;
  double t_max;
};

struct TailFit {
  double slope = 0;
  double std_error = 0;
  double intercept = 0;
  TailWindow window{};
  std::size_t n_points = 0;
  double residual_ss = 0;
  /// Residual sum of squares of log S against t (exponential decay) on the
  /// same points; smaller than residual_ss when the tail is not a power law.
  double exponential_residual_ss = 0;

  bool looks_exponential() const { return exponential_residual_ss < residual_ss; }
};

/// Least-squares slope of log P(tau > t) against log t on the grid points in
/// the window whose survival exceeds 10 / n_trials. The window must satisfy
/// 1 <= t_min < t_max < cap and contain at least 4 such points; otherwise
/// InsufficientData is thrown.
TailFit tail_fit(const HittingStats& stats, TailWindow window);

struct MomentEstimate {
  double estimate;
  double std_error;
  /// Censored trials contribute cap^power, so the estimate is only a lower
  /// bound of E[tau^power].
  bool lower_bound_only;
};

/// (sum of tau^power over hits + n_censored * cap^power) / n_trials.
MomentEstimate moment_estimate(const HittingStats& stats, double power);

// ---------------------------------------------------------------------------
// Quadrant-walk probes
// ---------------------------------------------------------------------------

struct Proportion {
  double value;
  double lo;  // 95% Wilson interval
  double hi;
};

Proportion wilson_interval(std::uint64_t successes, std::uint64_t trials);

struct LampertiRow {
  std::int64_t n;
  std::int64_t m;
  Proportion beyond_n2;  // P(tau > delta n^2)
  Proportion beyond_m2;  // P(tau > delta m^2)
};

struct LampertiProbe {
  double delta = 0;
  std::uint64_t n_trials = 0;
  std::uint64_t seed = 0;
  std::vector<LampertiRow> rows;
  /// P(tau > delta n^2) regressed on m/(m+n); needs at least 3 grid points.
  std::optional<LinearFit> shape_fit;
};

LampertiProbe lamperti_probe(const std::vector<std::pair<std::int64_t, std::int64_t>>& grid, double delta,
                             std::uint64_t n_trials, std::uint64_t seed, unsigned threads = 1);

// ---------------------------------------------------------------------------
// Phase scan (exploratory)
// ---------------------------------------------------------------------------

struct PhaseCell {
  double p;
  double beta;
  double hit_fraction;
  double censored_fraction;
  /// Mean over censored trials of the least-squares slope of f1 against the
  /// step count, sampled every ceil(cap/256) steps. NaN when no trial survived.
  double f1_slope;
  std::uint64_t n_surviving;
};

std::vector<PhaseCell> phase_scan(const std::vector<std::pair<double, double>>& cells, const Configuration& s0,
                                  std::uint64_t n_trials, std::uint64_t cap, std::uint64_t seed, unsigned threads = 1);

}  // namespace shockmix

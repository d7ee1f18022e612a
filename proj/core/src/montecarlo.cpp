#include "shockmix/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "shockmix/kernel.hpp"
#include "shockmix/lyapunov.hpp"
#include "shockmix/parallel.hpp"

namespace shockmix {

std::optional<std::uint64_t> hitting_time_discrete(Configuration s, const ModelParams& params, std::uint64_t cap,
                                                   CounterRng& rng) {
  std::uint64_t steps = 0;
  while (!s.is_heaviside()) {
    if (steps == cap) return std::nullopt;
    step_in_place(s, params, rng);
    ++steps;
  }
  return steps;
}

std::optional<ContinuousHit> hitting_time_continuous(Configuration s, const ModelParams& params, double cap,
                                                     CounterRng& rng) {
  double t = 0;
  std::uint64_t jumps = 0;
  while (!s.is_heaviside()) {
    t += gillespie_step_in_place(s, params, rng);
    if (t > cap) return std::nullopt;
    ++jumps;
  }
  return ContinuousHit{t, jumps};
}

namespace {

// Byte b < 252 encodes move b % 6; the four larger bytes are rejected, which
// keeps the six moves exactly equiprobable. One 64-bit draw feeds up to eight
// moves, and the table lookup avoids a data-dependent branch per step.
struct QuadrantTable {
  std::int8_t dn[256];
  std::int8_t dm[256];
  bool valid[256];
};

constexpr QuadrantTable make_quadrant_table() {
  constexpr std::int8_t kDn[6] = {1, -1, 0, 0, 1, -1};
  constexpr std::int8_t kDm[6] = {0, 0, 1, -1, -1, 1};
  QuadrantTable t{};
  for (int b = 0; b < 256; ++b) {
    t.valid[b] = b < 252;
    t.dn[b] = t.valid[b] ? kDn[b % 6] : 0;
    t.dm[b] = t.valid[b] ? kDm[b % 6] : 0;
  }
  return t;
}

constexpr QuadrantTable kQuadrant = make_quadrant_table();

}  // namespace

std::optional<std::uint64_t> quadrant_hitting(std::int64_t n, std::int64_t m, std::uint64_t cap, CounterRng& rng) {
  if (n < 1 || m < 1) throw std::invalid_argument("quadrant_hitting: start must be inside the quadrant");
  std::uint64_t steps = 0;
  while (steps < cap) {
    std::uint64_t bits = rng();
    for (int k = 0; k < 8; ++k, bits >>= 8) {
      const auto b = static_cast<unsigned>(bits & 0xff);
      if (!kQuadrant.valid[b]) continue;
      n += kQuadrant.dn[b];
      m += kQuadrant.dm[b];
      ++steps;
      if (n == 0 || m == 0) return steps;
      if (steps == cap) break;
    }
  }
  return std::nullopt;
}

std::string to_string(SimMode mode) {
  switch (mode) {
    case SimMode::Discrete: return "discrete";
    case SimMode::Continuous: return "continuous";
    case SimMode::Quadrant: return "quadrant";
  }
  return "?";
}

SimMode parse_mode(std::string_view text) {
  if (text == "discrete") return SimMode::Discrete;
  if (text == "continuous") return SimMode::Continuous;
  if (text == "quadrant") return SimMode::Quadrant;
  throw std::invalid_argument("unknown mode '" + std::string(text) + "' (discrete, continuous, quadrant)");
}

std::vector<SurvivalPoint> survival_curve(const std::vector<double>& sorted_samples, std::uint64_t n_censored,
                                          double cap) {
  constexpr int per_decade = 64;
  const double n = static_cast<double>(sorted_samples.size() + n_censored);
  std::vector<SurvivalPoint> curve;
  if (!(cap >= 1) || n == 0) return curve;
  const int last = static_cast<int>(std::floor(per_decade * std::log10(cap) + 1e-9));
  curve.reserve(static_cast<std::size_t>(last) + 1);
  for (int k = 0; k <= last; ++k) {
    const double t = std::min(cap, std::pow(10.0, static_cast<double>(k) / per_decade));
    const auto above = sorted_samples.end() - std::upper_bound(sorted_samples.begin(), sorted_samples.end(), t);
    curve.push_back({t, (static_cast<double>(above) + static_cast<double>(n_censored)) / n});
  }
  return curve;
}

HittingStats batch(const Configuration& s0, const ModelParams& params, std::uint64_t n_trials, double cap,
                   std::uint64_t seed, SimMode mode, unsigned threads) {
  params.validate();
  if (n_trials == 0) throw std::invalid_argument("batch: need at least one trial");
  if (!(cap >= 0) || !std::isfinite(cap)) throw std::invalid_argument("batch: cap must be finite and non-negative");
  if (mode == SimMode::Quadrant && (s0.num_blocks() != 1 || !params.is_voter()))
    throw std::invalid_argument("batch: quadrant mode needs a one-block start and beta = 1");

  const auto step_cap = static_cast<std::uint64_t>(std::floor(cap));
  constexpr double censored = -1;
  std::vector<double> times(n_trials);
  parallel_for(n_trials, threads, [&](std::uint64_t i) {
    CounterRng rng(seed, i);
    switch (mode) {
      case SimMode::Discrete: {
        const auto tau = hitting_time_discrete(s0, params, step_cap, rng);
        times[i] = tau ? static_cast<double>(*tau) : censored;
        break;
      }
      case SimMode::Continuous: {
        const auto hit = hitting_time_continuous(s0, params, cap, rng);
        times[i] = hit ? hit->time : censored;
        break;
      }
      case SimMode::Quadrant: {
        const auto tau = quadrant_hitting(static_cast<std::int64_t>(s0.zeros(1)),
                                          static_cast<std::int64_t>(s0.ones(1)), step_cap, rng);
        times[i] = tau ? static_cast<double>(*tau) : censored;
        break;
      }
    }
  });

  HittingStats stats;
  stats.s0 = s0;
  stats.params = params;
  stats.mode = mode;
  stats.n_trials = n_trials;
  stats.cap = mode == SimMode::Continuous ? cap : static_cast<double>(step_cap);
  stats.seed = seed;
  stats.samples.reserve(n_trials);
  for (double t : times) {
    if (t == censored)
      ++stats.n_censored;
    else
      stats.samples.push_back(t);
  }
  std::sort(stats.samples.begin(), stats.samples.end());
  stats.survival = survival_curve(stats.samples, stats.n_censored, stats.cap);
  return stats;
}

TailFit tail_fit(const HittingStats& stats, TailWindow window) {
  if (!(window.t_min >= 1) || !(window.t_min < window.t_max))
    throw InsufficientData("tail_fit: window must satisfy 1 <= t_min < t_max");
  if (!(window.t_max < stats.cap)) throw InsufficientData("tail_fit: window must end below the cap");

  const double floor_mass = 10.0 / static_cast<double>(stats.n_trials);
  std::vector<double> log_t, t_lin, log_s;
  for (const auto& pt : stats.survival) {
    if (pt.t < window.t_min || pt.t > window.t_max || !(pt.survival > floor_mass)) continue;
    log_t.push_back(std::log(pt.t));
    t_lin.push_back(pt.t);
    log_s.push_back(std::log(pt.survival));
  }
  if (log_t.size() < 4) throw InsufficientData("tail_fit: fewer than 4 usable grid points in window");

  const LinearFit power = least_squares(log_t, log_s);
  const LinearFit expo = least_squares(t_lin, log_s);
  TailFit fit;
  fit.slope = power.slope;
  fit.std_error = power.slope_stderr;
  fit.intercept = power.intercept;
  fit.window = window;
  fit.n_points = power.n_points;
  fit.residual_ss = power.residual_ss;
  fit.exponential_residual_ss = expo.residual_ss;
  return fit;
}

MomentEstimate moment_estimate(const HittingStats& stats, double power) {
  if (!(power >= 0)) throw std::invalid_argument("moment_estimate: power must be non-negative");
  const double n = static_cast<double>(stats.n_trials);
  const double capped = std::pow(stats.cap, power);
  double sum = static_cast<double>(stats.n_censored) * capped;
  double sum_sq = static_cast<double>(stats.n_censored) * capped * capped;
  for (double t : stats.samples) {
    const double v = std::pow(t, power);
    sum += v;
    sum_sq += v * v;
  }
  const double mean = sum / n;
  const double var = stats.n_trials > 1 ? std::max(0.0, (sum_sq - n * mean * mean) / (n - 1)) : 0.0;
  return {mean, std::sqrt(var / n), stats.n_censored > 0};
}

Proportion wilson_interval(std::uint64_t successes, std::uint64_t trials) {
  if (trials == 0) throw std::invalid_argument("wilson_interval: no trials");
  constexpr double z = 1.959963984540054;
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double denom = 1 + z * z / n;
  const double centre = (p + z * z / (2 * n)) / denom;
  const double half = z * std::sqrt(p * (1 - p) / n + z * z / (4 * n * n)) / denom;
  return {p, std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

LampertiProbe lamperti_probe(const std::vector<std::pair<std::int64_t, std::int64_t>>& grid, double delta,
                             std::uint64_t n_trials, std::uint64_t seed, unsigned threads) {
  if (!(delta > 0)) throw std::invalid_argument("lamperti_probe: delta must be positive");
  if (n_trials == 0) throw std::invalid_argument("lamperti_probe: need at least one trial");

  LampertiProbe probe;
  probe.delta = delta;
  probe.n_trials = n_trials;
  probe.seed = seed;
  std::vector<double> share, prob;
  for (std::size_t r = 0; r < grid.size(); ++r) {
    const auto [n, m] = grid[r];
    const auto horizon_n = static_cast<std::uint64_t>(std::floor(delta * static_cast<double>(n) * static_cast<double>(n)));
    const auto horizon_m = static_cast<std::uint64_t>(std::floor(delta * static_cast<double>(m) * static_cast<double>(m)));
    // Past the larger horizon the exact time no longer matters.
    const std::uint64_t cap = std::max(horizon_n, horizon_m) + 1;
    std::vector<std::uint64_t> tau(n_trials);
    parallel_for(n_trials, threads, [&](std::uint64_t i) {
      CounterRng rng(seed, r * n_trials + i);
      tau[i] = quadrant_hitting(n, m, cap, rng).value_or(std::numeric_limits<std::uint64_t>::max());
    });
    std::uint64_t beyond_n = 0, beyond_m = 0;
    for (auto t : tau) {
      beyond_n += t > horizon_n;
      beyond_m += t > horizon_m;
    }
    LampertiRow row{n, m, wilson_interval(beyond_n, n_trials), wilson_interval(beyond_m, n_trials)};
    share.push_back(static_cast<double>(m) / static_cast<double>(m + n));
    prob.push_back(row.beyond_n2.value);
    probe.rows.push_back(row);
  }
  if (share.size() >= 3) {
    try {
      probe.shape_fit = least_squares(share, prob);
    } catch (const std::invalid_argument&) {
      // All grid points share the same m/(m+n); no regression to report.
    }
  }
  return probe;
}

std::vector<PhaseCell> phase_scan(const std::vector<std::pair<double, double>>& cells, const Configuration& s0,
                                  std::uint64_t n_trials, std::uint64_t cap, std::uint64_t seed, unsigned threads) {
  if (cells.empty()) throw std::invalid_argument("phase_scan: empty grid");
  if (n_trials == 0) throw std::invalid_argument("phase_scan: need at least one trial");
  if (s0.is_heaviside()) throw std::invalid_argument("phase_scan: start must have at least one block");
  const std::uint64_t stride = std::max<std::uint64_t>(1, (cap + 255) / 256);
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();

  std::vector<PhaseCell> out;
  out.reserve(cells.size());
  for (std::size_t c = 0; c < cells.size(); ++c) {
    const auto [p, beta] = cells[c];
    const ModelParams params = make_params(beta, p);
    // Per trial: slope of f1 for a survivor, NaN for a hit.
    std::vector<double> slopes(n_trials, nan);
    std::vector<char> hit(n_trials, 0);
    parallel_for(n_trials, threads, [&](std::uint64_t i) {
      CounterRng rng(seed, c * n_trials + i);
      Configuration s = s0;
      std::vector<double> ts, fs;
      for (std::uint64_t step = 0;; ++step) {
        if (s.is_heaviside()) {
          hit[i] = 1;
          return;
        }
        if (step % stride == 0 || step == cap) {
          ts.push_back(static_cast<double>(step));
          fs.push_back(static_cast<double>(f1(s)));
        }
        if (step == cap) break;
        step_in_place(s, params, rng);
      }
      if (ts.size() >= 3) slopes[i] = least_squares(ts, fs).slope;
    });

    PhaseCell cell{p, beta, 0, 0, nan, 0};
    double slope_sum = 0;
    std::uint64_t slope_count = 0, hits = 0;
    for (std::uint64_t i = 0; i < n_trials; ++i) {
      hits += hit[i];
      if (!hit[i]) ++cell.n_surviving;
      if (!std::isnan(slopes[i])) slope_sum += slopes[i], ++slope_count;
    }
    cell.hit_fraction = static_cast<double>(hits) / static_cast<double>(n_trials);
    cell.censored_fraction = static_cast<double>(cell.n_surviving) / static_cast<double>(n_trials);
    if (slope_count > 0) cell.f1_slope = slope_sum / static_cast<double>(slope_count);
    out.push_back(cell);
  }
  return out;
}

}  // namespace shockmix

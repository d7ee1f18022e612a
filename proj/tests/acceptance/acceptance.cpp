// Acceptance gate: one PASS/FAIL line per criterion. Exit status is non-zero
// when any criterion fails. Pass a list of criterion numbers to run a subset.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <thread>

#include "shockmix/analysis.hpp"
#include "shockmix/kernel.hpp"
#include "shockmix/lyapunov.hpp"
#include "shockmix/montecarlo.hpp"
#include "support/site_oracle.hpp"
#include "support/stats.hpp"

using namespace shockmix;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

unsigned worker_count() { return std::max(1u, std::thread::hardware_concurrency()); }

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// ---------------------------------------------------------------------------
// 1-3: exact drift scan shared by the first three criteria.

struct DriftScan {
  std::size_t states = 0;
  std::size_t param_sets = 0;
  std::size_t flagged = 0;
  std::size_t voter_nonzero_f2 = 0;
  std::size_t voter_checked = 0;
  std::size_t symmetric_bad = 0;
  std::size_t symmetric_checked = 0;
};

const DriftScan& drift_scan() {
  static const DriftScan scan = [] {
    DriftScan out;
    const auto states = enumerate_states(16, 4);
    out.states = states.size();
    const std::vector<Rational> betas{0, Rational(1, 4), Rational(1, 2), Rational(3, 4), 1};
    for (const auto& beta : betas)
      for (std::int64_t tenths = 1; tenths <= 9; ++tenths) {
        const auto params = make_exact_params(beta, Rational(tenths, 10));
        ++out.param_sets;
        for (const auto& r : verify_drift(states, params)) {
          out.flagged += r.flagged;
          if (beta == Rational(1)) {
            ++out.voter_checked;
            out.voter_nonzero_f2 += r.drift_f2 != Rational(0);
          }
          if (beta == Rational(0) && tenths == 5) {
            ++out.symmetric_checked;
            const auto n = static_cast<std::int64_t>(r.config.num_blocks());
            out.symmetric_bad += r.drift_f1 != Rational(1, 2 * (2 * n + 1)) || r.second_moment_f1 != Rational(1, 2);
          }
        }
      }
    return out;
  }();
  return scan;
}

Outcome criterion_1() {
  const auto& s = drift_scan();
  return {s.flagged == 0, fmt("%zu states x %zu (beta,p) pairs, %zu nonzero residuals", s.states, s.param_sets,
                              s.flagged)};
}

Outcome criterion_2() {
  const auto& s = drift_scan();
  return {s.voter_checked > 0 && s.voter_nonzero_f2 == 0,
          fmt("beta=1: %zu state/param checks, %zu with E[df2] != 0", s.voter_checked, s.voter_nonzero_f2)};
}

Outcome criterion_3() {
  const auto& s = drift_scan();
  return {s.symmetric_checked > 0 && s.symmetric_bad == 0,
          fmt("beta=0,p=1/2: %zu states, %zu deviate from E[df1]=1/(2(2N+1)), E[df1^2]=1/2", s.symmetric_checked,
              s.symmetric_bad)};
}

// ---------------------------------------------------------------------------
// 4: increments and block algebra against the site oracle.

bool check_move(const Configuration& s, const BlockSums& sums, const oracle::Bits& bits, std::size_t j,
                oracle::Action a) {
  const Move mv = oracle::move_for(j, a);
  const auto next = apply_move(s, mv);
  const auto next_bits = oracle::act(bits, j, a);
  if (oracle::blocks_of(next) != oracle::blocks_of(next_bits)) return false;
  const auto f1_next = oracle::f1(next_bits);
  const auto f2_next = oracle::f2_twice(next_bits);
  return delta_f1(sums, mv) == f1_next - oracle::f1(bits) && delta_f2(sums, mv).twice() == f2_next - oracle::f2_twice(bits) &&
         f1(next) == f1_next && f2(next).twice() == f2_next;
}

Outcome criterion_4() {
  constexpr oracle::Action actions[] = {oracle::Action::Exchange, oracle::Action::Fill, oracle::Action::Empty};
  std::size_t states = 0, moves = 0, bad = 0;
  for_each_state(20, 5, [&](const Configuration& s) {
    ++states;
    const BlockSums sums(s);
    const auto bits = oracle::sites_of(s);
    for (std::size_t j = 0; j < s.num_discrepancies(); ++j)
      for (auto a : actions) {
        ++moves;
        bad += !check_move(s, sums, bits, j, a);
      }
  });
  CounterRng rng(2024, 4);
  std::size_t random_cases = 0;
  for (int i = 0; i < 100000; ++i) {
    const auto s = random_configuration(rng, 12, 12);
    const BlockSums sums(s);
    const auto bits = oracle::sites_of(s);
    const std::size_t j = rng.below(s.num_discrepancies());
    ++random_cases;
    bad += !check_move(s, sums, bits, j, actions[rng.below(3)]);
  }
  return {bad == 0, fmt("exhaustive: %zu states, %zu moves; random: %zu cases (N<=12, blocks<=12); %zu mismatches",
                        states, moves, random_cases, bad)};
}

// ---------------------------------------------------------------------------

Outcome criterion_5() {
  CounterRng rng(2024, 5);
  std::size_t bad = 0;
  for (int i = 0; i < 100000; ++i) bad += !check_relations(random_configuration(rng, 20, 50)).all();
  return {bad == 0, fmt("100000 random states (N<=20, blocks<=50), %zu violations", bad)};
}

// ---------------------------------------------------------------------------
// 6-7: voter model tail from (1,1).

Outcome criterion_6() {
  const auto s = batch(Configuration::parse("1:1"), make_params(1.0), 1000000, 1e5, 6, SimMode::Quadrant,
                       worker_count());
  const auto fit = tail_fit(s, {1e2, 1e4});
  return {fit.slope >= -1.75 && fit.slope <= -1.25,
          fmt("slope %.4f +- %.4f over [1e2,1e4] (%zu grid points), target [-1.75,-1.25]", fit.slope, fit.std_error,
              fit.n_points)};
}

// The growth of the 1.8-th moment between the two caps comes entirely from
// trials that survive past 1e4 steps, about 1.4 per million. At 1e6 trials
// the probe hinges on one or two such trials, so it gets its own 1e8-trial
// batch (same seed and streams for both caps, so the runs are coupled).
Outcome criterion_7() {
  constexpr std::uint64_t kTrials = 100000000;
  const auto moments = [](double cap) {
    const auto s = batch(Configuration::parse("1:1"), make_params(1.0), kTrials, cap, 7, SimMode::Quadrant,
                         worker_count());
    return std::pair{moment_estimate(s, 1.0).estimate, moment_estimate(s, 1.8).estimate};
  };
  const auto [m1_lo, m18_lo] = moments(1e4);
  const auto [m1_hi, m18_hi] = moments(1e5);
  const double change1 = std::abs(m1_hi / m1_lo - 1);
  const double growth18 = m18_hi / m18_lo - 1;
  return {change1 <= 0.05 && growth18 > 0.25,
          fmt("1e8 trials; power 1.0: %.4f -> %.4f (%.2f%%, need <=5%%); power 1.8: %.1f -> %.1f (+%.1f%%, need "
              ">25%%)",
              m1_lo, m1_hi, 100 * change1, m18_lo, m18_hi, 100 * growth18)};
}

// ---------------------------------------------------------------------------

Outcome criterion_8() {
  std::vector<Configuration> family;
  for (std::size_t n : {4u, 8u, 16u, 32u, 64u}) family.push_back(extremal_configuration(n));
  const auto scan = second_moment_scan(family);
  const double target = 16.0 / 5.0;
  return {std::abs(scan.fit.slope - target) <= 0.2,
          fmt("fitted exponent %.4f +- %.4f, target 3.2 +- 0.2", scan.fit.slope, scan.fit.slope_stderr)};
}

// ---------------------------------------------------------------------------
// 9: regimes from [(1,1)], 1e4 trials, cap 1e5.

Outcome criterion_9() {
  const auto s0 = Configuration::parse("1:1");
  const unsigned threads = worker_count();
  auto hit = [&](double beta, double p) {
    return batch(s0, make_params(beta, p), 10000, 1e5, 9, SimMode::Discrete, threads).hit_fraction();
  };
  const double a = hit(0.0, 0.9);
  const auto b_stats = batch(s0, make_params(0.0, 0.4), 10000, 1e5, 9, SimMode::Discrete, threads);
  const double c = hit(0.8, 0.3);
  const double d = hit(0.5, 0.5);

  // Transient case: the hit fraction stays well below one and the survival
  // curve is flat between 1e4 and 1e5 steps.
  auto survival_at = [&](double t) {
    double s = 1;
    for (const auto& pt : b_stats.survival)
      if (pt.t <= t) s = pt.survival;
    return s;
  };
  const double b = b_stats.hit_fraction();
  const double plateau = survival_at(1e4) - survival_at(1e5);
  const bool ok_b = b <= 0.9 && plateau <= 0.01;
  const bool pass = a >= 0.999 && ok_b && c >= 0.999 && d >= 0.999;
  return {pass, fmt("hit fractions (a) %.4f (b) %.4f [S(1e4)-S(1e5)=%.4f] (c) %.4f (d) %.4f", a, b, plateau, c, d)};
}

// ---------------------------------------------------------------------------
// 10: skeleton law and tau_c versus tau.

double skeleton_pvalue(const ModelParams& params, std::uint64_t seed) {
  const auto s = Configuration::parse("1:1");
  const auto law = transition_distribution(s, params);
  std::map<Move, std::size_t> index;
  for (std::size_t i = 0; i < law.entries.size(); ++i) index[law.entries[i].move] = i;
  constexpr int n = 100000;
  std::vector<double> observed(law.entries.size(), 0), expected(law.entries.size(), 0);
  CounterRng rng(seed, 0);
  for (int i = 0; i < n; ++i) observed[index.at(skeleton_step(s, params, rng).move)] += 1;
  for (std::size_t i = 0; i < law.entries.size(); ++i) expected[i] = n * law.entries[i].probability;
  return teststats::chi_square_pvalue(observed, expected);
}

Outcome criterion_10() {
  const double p_voter = skeleton_pvalue(make_params(1.0), 101);
  const double p_hybrid = skeleton_pvalue(make_params(0.5, 0.5), 102);
  bool means_ok = true;
  std::ostringstream detail;
  detail << fmt("chi-square p: voter %.3f, hybrid %.3f; ", p_voter, p_hybrid);
  for (const char* start : {"1:1", "2:3", "5:5"}) {
    const auto s0 = Configuration::parse(start);
    const auto cont = batch(s0, make_params(1.0), 20000, 1e6, 10, SimMode::Continuous, worker_count());
    const auto disc = batch(s0, make_params(1.0), 20000, 1e6, 11, SimMode::Discrete, worker_count());
    const auto mc = moment_estimate(cont, 1.0), md = moment_estimate(disc, 1.0);
    const double se = std::hypot(mc.std_error, md.std_error);
    means_ok = means_ok && mc.estimate <= md.estimate + 3 * se;
    detail << fmt("[%s] E tau_c %.1f vs E tau %.1f (se %.1f) ", start, mc.estimate, md.estimate, se);
  }
  auto text = detail.str();
  text.pop_back();
  return {p_voter > 0.01 && p_hybrid > 0.01 && means_ok, text};
}

// ---------------------------------------------------------------------------

Outcome criterion_11() {
  struct Case {
    const char* name;
    ModelParams params;
    const char* fn;
    FosterCriterion criterion;
  };
  const Case cases[] = {
      {"(a) EP 0.9 f2 erg", make_params(0, 0.9), "f2", FosterCriterion::Ergodic},
      {"(b) EP 0.4 f1 tr2", make_params(0, 0.4), "f1", FosterCriterion::Transient2},
      {"(c) HP 0.8/0.3 f1 erg", make_params(0.8, 0.3), "f1", FosterCriterion::Ergodic},
      {"(d) HP 0.5/0.5 f1 erg", make_params(0.5, 0.5), "f1", FosterCriterion::Ergodic},
  };
  bool pass = true;
  std::ostringstream detail;
  for (const auto& c : cases) {
    const auto v = check_foster(c.params, LyapunovFunction::parse(c.fn), 20, c.criterion);
    pass = pass && v.verdict == Evidence::For;
    detail << c.name << ": " << to_string(v.verdict);
    if (c.criterion == FosterCriterion::Transient2) detail << " K=" << v.jump_bound;
    detail << "; ";
  }
  const auto vm = check_foster(make_params(1.0), LyapunovFunction::parse("f2"), 20, FosterCriterion::Transient2);
  pass = pass && !vm.jumps_bounded;
  detail << fmt("VM f2 tr2: K=%.1f (inner %.1f), bounded=%s", vm.jump_bound, vm.jump_bound_inner,
                vm.jumps_bounded ? "yes" : "no");
  return {pass, detail.str()};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<int, std::function<Outcome()>>> criteria{
      {1, criterion_1}, {2, criterion_2}, {3, criterion_3}, {4, criterion_4},   {5, criterion_5},   {6, criterion_6},
      {7, criterion_7}, {8, criterion_8}, {9, criterion_9}, {10, criterion_10}, {11, criterion_11},
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));

  int failures = 0;
  for (const auto& [id, run] : criteria) {
    if (!only.empty() && !only.count(id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] criterion %2d: %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", id, o.detail.c_str(), secs);
    std::fflush(stdout);
    failures += !o.pass;
  }
  std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}

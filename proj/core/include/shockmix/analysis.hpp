#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "shockmix/configuration.hpp"
#include "shockmix/fit.hpp"
#include "shockmix/kernel.hpp"
#include "shockmix/params.hpp"
#include "shockmix/rng.hpp"

namespace shockmix {

// ---------------------------------------------------------------------------
// Closed-form drifts
// ---------------------------------------------------------------------------

/// E[f1(next) - f1(S)] = -(beta N - (1-beta)((q-p)N + q)) / (2N+1).
template <class Scalar>
Scalar closed_form_drift_f1(const Configuration& s, const BasicModelParams<Scalar>& params);

/// E[f2(next) - f2(S)] = (1-beta) ((N+q) - (p-q) sum_i (R_i + T_i)) / (2N+1).
/// The voter part contributes zero.
template <class Scalar>
Scalar closed_form_drift_f2(const Configuration& s, const BasicModelParams<Scalar>& params);

extern template double closed_form_drift_f1(const Configuration&, const ModelParams&);
extern template Rational closed_form_drift_f1(const Configuration&, const ExactModelParams&);
extern template double closed_form_drift_f2(const Configuration&, const ModelParams&);
extern template Rational closed_form_drift_f2(const Configuration&, const ExactModelParams&);

template <class Scalar>
struct DriftReport {
  Configuration config;
  BasicModelParams<Scalar> params;
  Scalar drift_f1{};
  Scalar drift_f2{};
  Scalar closed_f1{};
  Scalar closed_f2{};
  Scalar second_moment_f1{};
  Scalar second_moment_f2{};
  Scalar residual_f1{};
  Scalar residual_f2{};
  bool flagged = false;
};

/// Compares enumerated drifts with the closed forms on every state. In exact
/// mode a report is flagged unless both residuals are exactly zero; in
/// floating mode unless both are below `tolerance`. Flagged reports are
/// returned like every other report.
template <class Scalar>
std::vector<DriftReport<Scalar>> verify_drift(const std::vector<Configuration>& states,
                                              const BasicModelParams<Scalar>& params,
                                              double tolerance = 1e-12);

extern template std::vector<DriftReport<double>> verify_drift(const std::vector<Configuration>&, const ModelParams&,
                                                              double);
extern template std::vector<DriftReport<Rational>> verify_drift(const std::vector<Configuration>&,
                                                                const ExactModelParams&, double);

// ---------------------------------------------------------------------------
// State spaces
// ---------------------------------------------------------------------------

/// Every configuration with 1 <= N <= max_blocks and |S| <= max_size.
std::vector<Configuration> enumerate_states(std::size_t max_size, std::size_t max_blocks);

/// Calls `visit` for every configuration with 1 <= N <= max_blocks and
/// |S| <= max_size without materialising the list.
void for_each_state(std::size_t max_size, std::size_t max_blocks, const std::function<void(const Configuration&)>& visit);

/// N uniform in [1, max_blocks], every block length uniform in [1, max_length].
Configuration random_configuration(CounterRng& rng, std::size_t max_blocks, std::size_t max_length);

// ---------------------------------------------------------------------------
// Lyapunov function families and Foster-type checks
// ---------------------------------------------------------------------------

enum class LyapunovKind { F1, F2, Phi, Psi };

/// f1, f2, phi = f2^alpha or psi = f1^-alpha (psi is +inf on the Heaviside class).
struct LyapunovFunction {
  LyapunovKind kind = LyapunovKind::F1;
  double alpha = 1.0;

  static LyapunovFunction parse(std::string_view text);  // "f1", "f2", "phi:0.95", "psi:1"
  std::string str() const;
  double operator()(const Configuration& s) const;
};

/// Exact enumerated one-step drift of phi or psi. Requires N >= 1 and
/// alpha > 0. May return +inf for psi when the Heaviside class is reachable.
double transformed_drift(const Configuration& s, const ModelParams& params, const LyapunovFunction& transform);

enum class FosterCriterion { Ergodic, Recurrent, Transient1, Transient2, Moment };
std::string to_string(FosterCriterion c);
FosterCriterion parse_criterion(std::string_view text);  // erg | rec | tr1 | tr2 | mom

enum class Evidence { For, Against, Inconclusive };
std::string to_string(Evidence e);

struct FosterOptions {
  /// Drift margin: erg needs drift <= -epsilon, tr2 needs drift >= epsilon.
  double epsilon = 1e-9;
  /// Exponent p0 of the moment criterion, evaluated on g^{2 p0}.
  double moment_power = 1.0;
  /// Cap on the number of exceptional states listed in a verdict.
  std::size_t max_listed = 10000;
};

struct ExceptionalState {
  Configuration config;
  double drift;
};

struct CriterionVerdict {
  FosterCriterion criterion = FosterCriterion::Ergodic;
  std::string function;
  ModelParams params;
  std::size_t bound = 0;
  std::size_t n_states = 0;

  std::vector<ExceptionalState> exceptional;
  std::size_t n_exceptional = 0;
  std::size_t max_exceptional_size = 0;

  /// Drift range over the states outside the exceptional set.
  double min_drift = 0;
  double max_drift = 0;

  /// Largest |g(next) - g(S)| over reachable successors, over the full scan
  /// and over the inner half |S| <= bound/2.
  double jump_bound = 0;
  double jump_bound_inner = 0;
  bool jumps_bounded = true;

  /// Moment criterion: sup of E[g'^{2p0} - g^{2p0}] / g^{2p0-2}.
  double moment_ratio = 0;
  double moment_ratio_inner = 0;

  /// tr1: some scanned x0 outside the exceptional set has g(x0) < inf_A g.
  bool has_escape_state = false;

  Evidence verdict = Evidence::Inconclusive;
  std::string note;
};

/// Scans every state with 1 <= |S| <= bound (bound >= 4) and evaluates the
/// drift condition of the chosen criterion by exact enumeration. A scan is
/// evidence for the criterion when no state with |S| > bound/2 violates the
/// condition, evidence against when violations reach |S| = bound, and
/// inconclusive otherwise. Finite scans never certify anything.
CriterionVerdict check_foster(const ModelParams& params, const LyapunovFunction& g, std::size_t bound,
                              FosterCriterion criterion, const FosterOptions& options = {});

// ---------------------------------------------------------------------------
// Second moment of the f2 increment under the voter model
// ---------------------------------------------------------------------------

struct SecondMomentPoint {
  std::size_t n_blocks;
  std::uint64_t size;
  double second_moment;
};

struct SecondMomentScan {
  std::vector<SecondMomentPoint> points;
  LinearFit fit;  // log E[(df2)^2] against log |S|
};

/// Throws std::invalid_argument for fewer than 4 configurations.
SecondMomentScan second_moment_scan(const std::vector<Configuration>& family);

/// n_1 = m_N = ceil(N^{5/4}), all other blocks of length 1 (N >= 2).
Configuration extremal_configuration(std::size_t n_blocks);
/// All 2N blocks of the same length.
Configuration uniform_configuration(std::size_t n_blocks, std::uint64_t length);

// ---------------------------------------------------------------------------
// N = 1 voter chain as a walk in the quadrant
// ---------------------------------------------------------------------------

struct QuadrantStep {
  std::int64_t n;
  std::int64_t m;
  Rational probability;
  bool absorbing;
};

/// Six neighbours (n±1, m), (n, m±1), (n+1, m-1), (n-1, m+1), each with
/// probability 1/6; states on an axis are absorbing (Heaviside class).
std::vector<QuadrantStep> quadrant_kernel(std::int64_t n, std::int64_t m);

}  // namespace shockmix

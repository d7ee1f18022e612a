#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "shockmix/analysis.hpp"

namespace shockmix {

std::string to_string(FosterCriterion c) {
  switch (c) {
    case FosterCriterion::Ergodic: return "erg";
    case FosterCriterion::Recurrent: return "rec";
    case FosterCriterion::Transient1: return "tr1";
    case FosterCriterion::Transient2: return "tr2";
    case FosterCriterion::Moment: return "mom";
  }
  return "?";
}

FosterCriterion parse_criterion(std::string_view text) {
  if (text == "erg") return FosterCriterion::Ergodic;
  if (text == "rec") return FosterCriterion::Recurrent;
  if (text == "tr1") return FosterCriterion::Transient1;
  if (text == "tr2") return FosterCriterion::Transient2;
  if (text == "mom") return FosterCriterion::Moment;
  throw std::invalid_argument("unknown criterion '" + std::string(text) + "' (erg, rec, tr1, tr2, mom)");
}

std::string to_string(Evidence e) {
  switch (e) {
    case Evidence::For: return "evidence-for";
    case Evidence::Against: return "evidence-against";
    case Evidence::Inconclusive: return "inconclusive";
  }
  return "?";
}

CriterionVerdict check_foster(const ModelParams& params, const LyapunovFunction& g, std::size_t bound,
                              FosterCriterion criterion, const FosterOptions& options) {
  params.validate();
  if (bound < 4) throw std::invalid_argument("check_foster: bound must be at least 4");
  if (!(options.epsilon >= 0)) throw std::invalid_argument("check_foster: epsilon must be non-negative");
  if (criterion == FosterCriterion::Moment && !(options.moment_power >= 1))
    throw std::invalid_argument("check_foster: moment power must be >= 1");

  constexpr double inf = std::numeric_limits<double>::infinity();
  const std::size_t half = bound / 2;
  const double power = 2.0 * options.moment_power;

  CriterionVerdict v;
  v.criterion = criterion;
  v.function = g.str();
  v.params = params;
  v.bound = bound;
  v.min_drift = inf;
  v.max_drift = -inf;

  double inf_g_exceptional = inf;
  double inf_g_regular = inf;
  std::size_t moment_argmax_size = 0;

  for_each_state(bound, bound / 2, [&](const Configuration& s) {
    ++v.n_states;
    const auto law = transition_distribution(s, params);
    const double base = g(s);
    const auto size = static_cast<std::size_t>(s.size());
    double drift = 0, jump = 0, moment = 0;
    for (const auto& e : law.entries) {
      const double next = g(e.successor);
      drift += e.probability * (next - base);
      jump = std::max(jump, std::abs(next - base));
      if (criterion == FosterCriterion::Moment)
        moment += e.probability * (std::pow(next, power) - std::pow(base, power));
    }

    v.jump_bound = std::max(v.jump_bound, jump);
    if (size <= half) v.jump_bound_inner = std::max(v.jump_bound_inner, jump);

    if (criterion == FosterCriterion::Moment) {
      const double ratio = moment / std::pow(base, power - 2.0);
      if (ratio > v.moment_ratio || v.n_states == 1) {
        v.moment_ratio = ratio;
        moment_argmax_size = size;
      }
      if (size <= half) v.moment_ratio_inner = std::max(v.moment_ratio_inner, ratio);
    }

    // Rounding slack for conditions that compare a drift with zero.
    const double slack = 1e-12 * std::max(1.0, std::abs(base));
    bool ok = true;
    switch (criterion) {
      case FosterCriterion::Ergodic: ok = drift <= -options.epsilon; break;
      case FosterCriterion::Recurrent:
      case FosterCriterion::Transient1: ok = drift <= slack; break;
      case FosterCriterion::Transient2: ok = drift >= options.epsilon; break;
      case FosterCriterion::Moment: ok = true; break;
    }

    if (ok) {
      v.min_drift = std::min(v.min_drift, drift);
      v.max_drift = std::max(v.max_drift, drift);
      inf_g_regular = std::min(inf_g_regular, base);
    } else {
      ++v.n_exceptional;
      v.max_exceptional_size = std::max(v.max_exceptional_size, size);
      inf_g_exceptional = std::min(inf_g_exceptional, base);
      if (v.exceptional.size() < options.max_listed) v.exceptional.push_back({s, drift});
    }
  });

  if (v.n_exceptional == v.n_states) v.min_drift = v.max_drift = std::numeric_limits<double>::quiet_NaN();
  v.jumps_bounded = v.jump_bound <= v.jump_bound_inner * (1 + 1e-9) + 1e-12;
  v.has_escape_state = inf_g_regular < inf_g_exceptional;

  const bool tail_clear = v.max_exceptional_size <= half;
  const bool at_edge = v.max_exceptional_size == bound;
  switch (criterion) {
    case FosterCriterion::Ergodic:
    case FosterCriterion::Recurrent:
      v.verdict = tail_clear ? Evidence::For : at_edge ? Evidence::Against : Evidence::Inconclusive;
      break;
    case FosterCriterion::Transient1:
      if (tail_clear && v.has_escape_state)
        v.verdict = Evidence::For;
      else
        v.verdict = at_edge || !v.has_escape_state ? Evidence::Against : Evidence::Inconclusive;
      if (!v.has_escape_state) v.note = "no scanned state outside A lies below inf_A g";
      break;
    case FosterCriterion::Transient2:
      if (tail_clear && v.jumps_bounded)
        v.verdict = Evidence::For;
      else
        v.verdict = at_edge || !v.jumps_bounded ? Evidence::Against : Evidence::Inconclusive;
      if (!v.jumps_bounded) v.note = "largest jump keeps growing with |S|";
      break;
    case FosterCriterion::Moment: {
      const bool flat = v.moment_ratio <= v.moment_ratio_inner + 1e-9 * std::abs(v.moment_ratio_inner);
      v.verdict = flat ? Evidence::For : moment_argmax_size == bound ? Evidence::Against : Evidence::Inconclusive;
      v.note = "exceptional set not used; compares sup of the moment ratio on the inner and full scan";
      break;
    }
  }
  return v;
}

}  // namespace shockmix

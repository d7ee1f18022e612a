#include "shockmix/analysis.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "shockmix/lyapunov.hpp"

namespace shockmix {

namespace {

template <class Scalar>
Scalar abs_of(const Scalar& x) {
  return x < Scalar(0) ? -x : x;
}

void require_blocks(const Configuration& s, const char* who) {
  if (s.is_heaviside()) throw std::invalid_argument(std::string(who) + ": Heaviside class has no drift formula");
}

}  // namespace

template <class Scalar>
Scalar closed_form_drift_f1(const Configuration& s, const BasicModelParams<Scalar>& params) {
  require_blocks(s, "closed_form_drift_f1");
  params.validate();
  const Scalar n(static_cast<std::int64_t>(s.num_blocks()));
  const Scalar one(1);
  const Scalar q = params.q();
  return -(params.beta * n - (one - params.beta) * ((q - params.p) * n + q)) / (Scalar(2) * n + one);
}

template <class Scalar>
Scalar closed_form_drift_f2(const Configuration& s, const BasicModelParams<Scalar>& params) {
  require_blocks(s, "closed_form_drift_f2");
  params.validate();
  const BlockSums sums(s);
  const std::size_t big_n = sums.num_blocks();
  std::int64_t rt = 0;
  for (std::size_t i = 1; i <= big_n; ++i) rt += sums.R(i) + sums.T(i);
  const Scalar n(static_cast<std::int64_t>(big_n));
  const Scalar one(1);
  const Scalar q = params.q();
  return (one - params.beta) * ((n + q) - (params.p - q) * Scalar(rt)) / (Scalar(2) * n + one);
}

template double closed_form_drift_f1(const Configuration&, const ModelParams&);
template Rational closed_form_drift_f1(const Configuration&, const ExactModelParams&);
template double closed_form_drift_f2(const Configuration&, const ModelParams&);
template Rational closed_form_drift_f2(const Configuration&, const ExactModelParams&);

template <class Scalar>
std::vector<DriftReport<Scalar>> verify_drift(const std::vector<Configuration>& states,
                                              const BasicModelParams<Scalar>& params, double tolerance) {
  params.validate();
  constexpr bool exact = std::is_same_v<Scalar, Rational>;
  std::vector<DriftReport<Scalar>> out;
  out.reserve(states.size());
  for (const auto& s : states) {
    require_blocks(s, "verify_drift");
    DriftReport<Scalar> r;
    r.config = s;
    r.params = params;
    const auto law = transition_distribution(s, params);
    const std::int64_t g1 = f1(s);
    const HalfInt g2 = f2(s);
    for (const auto& e : law.entries) {
      const Scalar d1 = as_scalar<Scalar>(f1(e.successor) - g1);
      const Scalar d2 = as_scalar<Scalar>(f2(e.successor) - g2);
      r.drift_f1 += e.probability * d1;
      r.drift_f2 += e.probability * d2;
      r.second_moment_f1 += e.probability * d1 * d1;
      r.second_moment_f2 += e.probability * d2 * d2;
    }
    r.closed_f1 = closed_form_drift_f1(s, params);
    r.closed_f2 = closed_form_drift_f2(s, params);
    r.residual_f1 = r.drift_f1 - r.closed_f1;
    r.residual_f2 = r.drift_f2 - r.closed_f2;
    if constexpr (exact) {
      r.flagged = r.residual_f1 != Scalar(0) || r.residual_f2 != Scalar(0);
    } else {
      r.flagged = !(abs_of(r.residual_f1) < tolerance) || !(abs_of(r.residual_f2) < tolerance);
    }
    out.push_back(std::move(r));
  }
  return out;
}

template std::vector<DriftReport<double>> verify_drift(const std::vector<Configuration>&, const ModelParams&, double);
template std::vector<DriftReport<Rational>> verify_drift(const std::vector<Configuration>&, const ExactModelParams&,
                                                         double);

void for_each_state(std::size_t max_size, std::size_t max_blocks,
                    const std::function<void(const Configuration&)>& visit) {
  std::vector<BlockPair> pairs;
  // Lengths are filled left to right: slot 2i is n_{i+1}, slot 2i+1 is m_{i+1}.
  std::vector<std::int64_t> slots;
  auto rec = [&](auto&& self, std::size_t budget) -> void {
    if (!slots.empty() && slots.size() % 2 == 0) {
      pairs.clear();
      for (std::size_t i = 0; i < slots.size(); i += 2) pairs.push_back({slots[i], slots[i + 1]});
      visit(Configuration::from_blocks(pairs));
      if (slots.size() / 2 == max_blocks) return;
    }
    for (std::size_t len = 1; len <= budget; ++len) {
      slots.push_back(static_cast<std::int64_t>(len));
      self(self, budget - len);
      slots.pop_back();
    }
  };
  if (max_blocks == 0) return;
  rec(rec, max_size);
}

std::vector<Configuration> enumerate_states(std::size_t max_size, std::size_t max_blocks) {
  std::vector<Configuration> out;
  for_each_state(max_size, max_blocks, [&](const Configuration& s) { out.push_back(s); });
  return out;
}

Configuration random_configuration(CounterRng& rng, std::size_t max_blocks, std::size_t max_length) {
  if (max_blocks == 0 || max_length == 0) throw std::invalid_argument("random_configuration: empty range");
  const std::size_t n = 1 + rng.below(max_blocks);
  std::vector<BlockPair> pairs(n);
  for (auto& b : pairs) {
    b.zeros = 1 + static_cast<std::int64_t>(rng.below(max_length));
    b.ones = 1 + static_cast<std::int64_t>(rng.below(max_length));
  }
  return Configuration::from_blocks(pairs);
}

LyapunovFunction LyapunovFunction::parse(std::string_view text) {
  const auto colon = text.find(':');
  const std::string_view name = text.substr(0, colon);
  LyapunovFunction g;
  if (name == "f1")
    g.kind = LyapunovKind::F1;
  else if (name == "f2")
    g.kind = LyapunovKind::F2;
  else if (name == "phi")
    g.kind = LyapunovKind::Phi;
  else if (name == "psi")
    g.kind = LyapunovKind::Psi;
  else
    throw std::invalid_argument("unknown Lyapunov function '" + std::string(text) + "'");

  if (colon != std::string_view::npos) {
    if (g.kind == LyapunovKind::F1 || g.kind == LyapunovKind::F2)
      throw std::invalid_argument("f1 and f2 take no exponent");
    g.alpha = to_double(parse_number(text.substr(colon + 1)));
  } else if (g.kind == LyapunovKind::Phi || g.kind == LyapunovKind::Psi) {
    throw std::invalid_argument("phi and psi need an exponent, e.g. phi:0.95");
  }
  if (!(g.alpha > 0) || !std::isfinite(g.alpha)) throw std::invalid_argument("exponent must be positive");
  return g;
}

std::string LyapunovFunction::str() const {
  switch (kind) {
    case LyapunovKind::F1: return "f1";
    case LyapunovKind::F2: return "f2";
    case LyapunovKind::Phi: return "phi:" + std::to_string(alpha);
    case LyapunovKind::Psi: return "psi:" + std::to_string(alpha);
  }
  return "?";
}

double LyapunovFunction::operator()(const Configuration& s) const {
  switch (kind) {
    case LyapunovKind::F1: return static_cast<double>(f1(s));
    case LyapunovKind::F2: return f2(s).to_double();
    case LyapunovKind::Phi: return std::pow(f2(s).to_double(), alpha);
    case LyapunovKind::Psi:
      if (s.is_heaviside()) return std::numeric_limits<double>::infinity();
      return std::pow(static_cast<double>(f1(s)), -alpha);
  }
  return 0;
}

double transformed_drift(const Configuration& s, const ModelParams& params, const LyapunovFunction& transform) {
  require_blocks(s, "transformed_drift");
  if (!(transform.alpha > 0)) throw std::invalid_argument("transformed_drift: alpha must be positive");
  const auto law = transition_distribution(s, params);
  const double base = transform(s);
  double acc = 0;
  for (const auto& e : law.entries) acc += e.probability * (transform(e.successor) - base);
  return acc;
}

SecondMomentScan second_moment_scan(const std::vector<Configuration>& family) {
  if (family.size() < 4) throw std::invalid_argument("second_moment_scan: need at least 4 configurations");
  SecondMomentScan scan;
  std::vector<double> x, y;
  for (const auto& s : family) {
    require_blocks(s, "second_moment_scan");
    // Exact integer sum of (2 df2)^2 over the 4N+2 equally likely voter moves.
    const BlockSums sums(s);
    uint128 acc = 0;
    for (const auto& d : s.discrepancies()) {
      const Move fill = d.type == EdgeType::OneZero ? Move::add_right(d.block) : Move::add_left(d.block);
      const Move empty = d.type == EdgeType::OneZero ? Move::remove_right(d.block) : Move::remove_left(d.block);
      for (const Move& mv : {fill, empty}) {
        const std::int64_t t = delta_f2(sums, mv).twice();
        acc += static_cast<uint128>(static_cast<std::uint64_t>(t < 0 ? -t : t)) * static_cast<std::uint64_t>(t < 0 ? -t : t);
      }
    }
    const double moves = static_cast<double>(2 * s.num_discrepancies());
    const double m2 = static_cast<double>(acc) / (4.0 * moves);
    scan.points.push_back({s.num_blocks(), s.size(), m2});
    x.push_back(std::log(static_cast<double>(s.size())));
    y.push_back(std::log(m2));
  }
  scan.fit = least_squares(x, y);
  return scan;
}

Configuration extremal_configuration(std::size_t n_blocks) {
  if (n_blocks < 2) throw std::invalid_argument("extremal_configuration: need N >= 2");
  // a = ceil(N^{5/4}): smallest a with a^4 >= N^5.
  const auto n = static_cast<long double>(n_blocks);
  auto a = static_cast<std::int64_t>(std::ceil(std::pow(n, 1.25L)));
  auto fourth = [](std::int64_t v) { return static_cast<long double>(v) * v * v * v; };
  const long double target = n * n * n * n * n;
  while (a > 1 && fourth(a - 1) >= target) --a;
  while (fourth(a) < target) ++a;
  std::vector<BlockPair> pairs(n_blocks, BlockPair{1, 1});
  pairs.front().zeros = a;
  pairs.back().ones = a;
  return Configuration::from_blocks(pairs);
}

Configuration uniform_configuration(std::size_t n_blocks, std::uint64_t length) {
  if (n_blocks == 0 || length == 0) throw std::invalid_argument("uniform_configuration: empty");
  const auto l = static_cast<std::int64_t>(length);
  return Configuration::from_blocks(std::vector<BlockPair>(n_blocks, BlockPair{l, l}));
}

std::vector<QuadrantStep> quadrant_kernel(std::int64_t n, std::int64_t m) {
  if (n < 1 || m < 1) throw std::invalid_argument("quadrant_kernel: state must be inside the quadrant");
  const Rational sixth(1, 6);
  const std::pair<std::int64_t, std::int64_t> moves[] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, -1}, {-1, 1}};
  std::vector<QuadrantStep> out;
  out.reserve(6);
  for (const auto& [dn, dm] : moves) {
    const std::int64_t a = n + dn, b = m + dm;
    out.push_back({a, b, sixth, a == 0 || b == 0});
  }
  return out;
}

}  // namespace shockmix

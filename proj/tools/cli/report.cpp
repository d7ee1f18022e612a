#include "report.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace shockmix::cli {

namespace {

json number(double x) {
  // JSON has no inf/nan; spell them out instead of emitting null.
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

json scalar(double x) { return number(x); }
json scalar(const Rational& x) { return to_string(x); }

// Shortest text that round-trips to the same double.
std::string csv_scalar(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}
std::string csv_scalar(const Rational& x) { return to_string(x); }

}  // namespace

json header_json(const RunHeader& h) {
  json j;
  j["tool"] = "shockmix " SHOCKMIX_VERSION;
  j["subcommand"] = h.subcommand;
  j["invocation"] = h.invocation;
  if (h.has_seed) j["seed"] = h.seed;
  return j;
}

void write_csv_header(std::ostream& out, const RunHeader& h, const std::vector<std::string>& extra) {
  out << "# tool: shockmix " SHOCKMIX_VERSION "\n";
  out << "# invocation: " << h.invocation << "\n";
  if (h.has_seed) out << "# seed: " << h.seed << "\n";
  for (const auto& line : extra) out << "# " << line << "\n";
}

json to_json(const ModelParams& p) { return {{"beta", p.beta}, {"p", p.p}}; }
json to_json(const ExactModelParams& p) { return {{"beta", to_string(p.beta)}, {"p", to_string(p.p)}}; }

template <class Scalar>
json drift_report_json(const RunHeader& h, const std::vector<DriftReport<Scalar>>& reports, std::size_t max_size,
                       std::size_t max_blocks, double tolerance) {
  constexpr bool exact = std::is_same_v<Scalar, Rational>;
  json j = header_json(h);
  j["mode"] = exact ? "exact" : "float";
  if (!exact) j["tolerance"] = tolerance;
  j["max_size"] = max_size;
  j["max_blocks"] = max_blocks;
  if (!reports.empty()) j["params"] = to_json(reports.front().params);
  std::size_t flagged = 0;
  json rows = json::array();
  for (const auto& r : reports) {
    flagged += r.flagged;
    rows.push_back({{"config", r.config.str()},
                    {"N", r.config.num_blocks()},
                    {"size", r.config.size()},
                    {"drift_f1", scalar(r.drift_f1)},
                    {"closed_f1", scalar(r.closed_f1)},
                    {"residual_f1", scalar(r.residual_f1)},
                    {"drift_f2", scalar(r.drift_f2)},
                    {"closed_f2", scalar(r.closed_f2)},
                    {"residual_f2", scalar(r.residual_f2)},
                    {"second_moment_f1", scalar(r.second_moment_f1)},
                    {"second_moment_f2", scalar(r.second_moment_f2)},
                    {"flagged", r.flagged}});
  }
  j["n_states"] = reports.size();
  j["n_flagged"] = flagged;
  j["states"] = std::move(rows);
  return j;
}

template <class Scalar>
void drift_report_csv(std::ostream& out, const RunHeader& h, const std::vector<DriftReport<Scalar>>& reports) {
  write_csv_header(out, h);
  out << "config,N,size,drift_f1,closed_f1,residual_f1,drift_f2,closed_f2,residual_f2,flagged\n";
  for (const auto& r : reports) {
    out << '"' << r.config.str() << "\"," << r.config.num_blocks() << ',' << r.config.size() << ','
        << csv_scalar(r.drift_f1) << ',' << csv_scalar(r.closed_f1) << ',' << csv_scalar(r.residual_f1) << ','
        << csv_scalar(r.drift_f2) << ',' << csv_scalar(r.closed_f2) << ',' << csv_scalar(r.residual_f2) << ','
        << (r.flagged ? 1 : 0) << '\n';
  }
}

template json drift_report_json(const RunHeader&, const std::vector<DriftReport<double>>&, std::size_t, std::size_t,
                                double);
template json drift_report_json(const RunHeader&, const std::vector<DriftReport<Rational>>&, std::size_t, std::size_t,
                                double);
template void drift_report_csv(std::ostream&, const RunHeader&, const std::vector<DriftReport<double>>&);
template void drift_report_csv(std::ostream&, const RunHeader&, const std::vector<DriftReport<Rational>>&);

json stats_json(const RunHeader& h, const HittingStats& s, bool include_samples) {
  json j = header_json(h);
  j["params"] = to_json(s.params);
  j["config"] = s.s0.str();
  j["mode"] = to_string(s.mode);
  j["n_trials"] = s.n_trials;
  j["cap"] = s.cap;
  j["n_censored"] = s.n_censored;
  j["hit_fraction"] = s.hit_fraction();
  const auto mean = moment_estimate(s, 1.0);
  j["mean"] = {{"estimate", mean.estimate}, {"std_error", mean.std_error}, {"lower_bound_only", mean.lower_bound_only}};
  if (!s.samples.empty()) {
    j["median_uncensored"] = s.samples[s.samples.size() / 2];
    j["max_uncensored"] = s.samples.back();
  }
  json grid = json::array();
  for (const auto& pt : s.survival) grid.push_back({pt.t, pt.survival});
  j["survival"] = std::move(grid);
  if (include_samples) j["samples"] = s.samples;
  return j;
}

void stats_csv(std::ostream& out, const RunHeader& h, const HittingStats& s) {
  write_csv_header(out, h,
                   {"config: " + s.s0.str(), "mode: " + to_string(s.mode), "trials: " + std::to_string(s.n_trials),
                    "cap: " + csv_scalar(s.cap), "censored: " + std::to_string(s.n_censored),
                    "rows: one per trial, sorted; censored rows report the cap"});
  out << "tau,censored\n";
  for (double t : s.samples) out << csv_scalar(t) << ",0\n";
  for (std::uint64_t i = 0; i < s.n_censored; ++i) out << csv_scalar(s.cap) << ",1\n";
}

HittingStats stats_from_json(const json& j) {
  HittingStats s;
  s.n_trials = j.at("n_trials").get<std::uint64_t>();
  s.cap = j.at("cap").get<double>();
  s.n_censored = j.at("n_censored").get<std::uint64_t>();
  if (j.contains("seed")) s.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("mode")) s.mode = parse_mode(j.at("mode").get<std::string>());
  if (j.contains("config")) s.s0 = Configuration::parse(j.at("config").get<std::string>());
  for (const auto& pt : j.at("survival")) s.survival.push_back({pt.at(0).get<double>(), pt.at(1).get<double>()});
  if (s.n_trials == 0 || s.survival.empty()) throw std::invalid_argument("stats file has no trials");
  return s;
}

json tail_json(const RunHeader& h, const TailFit& fit, const HittingStats& s, bool non_power_law) {
  json j = header_json(h);
  j["n_trials"] = s.n_trials;
  j["cap"] = s.cap;
  j["window"] = {fit.window.t_min, fit.window.t_max};
  j["slope"] = fit.slope;
  j["std_error"] = fit.std_error;
  j["intercept"] = fit.intercept;
  j["n_points"] = fit.n_points;
  j["residual_ss"] = fit.residual_ss;
  j["exponential_residual_ss"] = fit.exponential_residual_ss;
  j["non_power_law"] = non_power_law;
  return j;
}

json verdict_json(const RunHeader& h, const CriterionVerdict& v) {
  json j = header_json(h);
  j["criterion"] = to_string(v.criterion);
  j["function"] = v.function;
  j["params"] = to_json(v.params);
  j["scan"] = {{"description", "all states with 1 <= |S| <= bound"}, {"bound", v.bound}, {"n_states", v.n_states}};
  j["verdict"] = to_string(v.verdict);
  j["margin"] = {{"min_drift", number(v.min_drift)}, {"max_drift", number(v.max_drift)}};
  j["jumps"] = {{"K", number(v.jump_bound)}, {"K_inner", number(v.jump_bound_inner)}, {"bounded", v.jumps_bounded}};
  if (v.criterion == FosterCriterion::Moment)
    j["moment_ratio"] = {{"sup", number(v.moment_ratio)}, {"sup_inner", number(v.moment_ratio_inner)}};
  if (v.criterion == FosterCriterion::Transient1) j["has_escape_state"] = v.has_escape_state;
  if (!v.note.empty()) j["note"] = v.note;
  json ex = json::array();
  for (const auto& e : v.exceptional) ex.push_back({{"config", e.config.str()}, {"drift", number(e.drift)}});
  j["exceptional"] = {{"count", v.n_exceptional},
                      {"max_size", v.max_exceptional_size},
                      {"listed", v.exceptional.size()},
                      {"states", std::move(ex)}};
  return j;
}

void phase_csv(std::ostream& out, const RunHeader& h, const std::vector<PhaseCell>& cells, std::uint64_t n_trials,
               std::uint64_t cap) {
  write_csv_header(out, h,
                   {"exploratory: finite-cap hit fractions and f1 slopes, not a phase diagram",
                    "trials: " + std::to_string(n_trials), "cap: " + std::to_string(cap)});
  out << "p,beta,hit_fraction,censored_fraction,f1_slope,n_surviving\n";
  for (const auto& c : cells)
    out << csv_scalar(c.p) << ',' << csv_scalar(c.beta) << ',' << csv_scalar(c.hit_fraction) << ','
        << csv_scalar(c.censored_fraction) << ',' << (std::isnan(c.f1_slope) ? "nan" : csv_scalar(c.f1_slope)) << ','
        << c.n_surviving << '\n';
}

}  // namespace shockmix::cli

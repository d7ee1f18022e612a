// shockmix command-line front end.
//
// Exit codes: 0 success, 1 usage error, 2 verification failure,
// 3 insufficient data for the requested estimate.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "report.hpp"

namespace {

using namespace shockmix;
using namespace shockmix::cli;

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kVerificationFailed = 2;
constexpr int kInsufficientData = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string quote_arg(const std::string& a) {
  const bool plain = !a.empty() && a.find_first_of(" \t\n'\"\\$`*?;&|<>()") == std::string::npos;
  if (plain) return a;
  std::string out = "'";
  for (char c : a) {
    if (c == '\'')
      out += "'\\''";
    else
      out += c;
  }
  return out + "'";
}

std::string invocation_of(int argc, char** argv) {
  std::string s = "shockmix";
  for (int i = 1; i < argc; ++i) s += " " + quote_arg(argv[i]);
  return s;
}

unsigned default_threads() { return std::max(1u, std::thread::hardware_concurrency()); }

// Writes to --out, or stdout for "-".
void emit(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot open output file: " + path);
  f << text;
  if (!f) throw UsageError("failed writing output file: " + path);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

ModelParams float_params(const std::string& beta, const std::string& p) {
  return make_params(to_double(parse_number(beta)), to_double(parse_number(p)));
}

struct Common {
  std::string out = "-";
  std::string format = "json";
};

void add_output(CLI::App* cmd, Common& c, std::vector<std::string> formats) {
  cmd->add_option("--out", c.out, "output file, - for stdout")->capture_default_str();
  cmd->add_option("--format", c.format, "output format")->capture_default_str()->check(CLI::IsMember(formats));
}

struct SimFlags {
  std::string beta;
  std::string p = "1/2";
  std::string config = "1:1";
  std::uint64_t trials = 10000;
  double cap = 1e5;
  std::uint64_t seed = 1;
  unsigned threads = default_threads();
  std::string mode = "discrete";
};

void add_sim_flags(CLI::App* cmd, SimFlags& f, bool beta_required) {
  auto* b = cmd->add_option("--beta", f.beta, "voter weight in [0,1], decimal or a/b");
  if (beta_required) b->required();
  cmd->add_option("--p", f.p, "exclusion jump probability")->capture_default_str();
  cmd->add_option("--config", f.config, "initial blocks n1:m1,n2:m2,...")->capture_default_str();
  cmd->add_option("--trials", f.trials, "number of trajectories")->capture_default_str()->check(CLI::PositiveNumber);
  cmd->add_option("--cap", f.cap, "censoring horizon (steps, or time in continuous mode)")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--seed", f.seed, "base seed")->capture_default_str();
  cmd->add_option("--threads", f.threads, "worker threads (results do not depend on it)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--mode", f.mode, "discrete | continuous | quadrant")
      ->capture_default_str()
      ->check(CLI::IsMember({"discrete", "continuous", "quadrant"}));
}

HittingStats run_batch(const SimFlags& f) {
  const auto params = float_params(f.beta, f.p);
  const auto s0 = Configuration::parse(f.config);
  return batch(s0, params, f.trials, f.cap, f.seed, parse_mode(f.mode), f.threads);
}

// ---------------------------------------------------------------------------

struct DriftFlags {
  Common out;
  std::string beta;
  std::string p = "1/2";
  std::size_t max_size = 12;
  std::optional<std::size_t> max_blocks;
  double tolerance = 1e-12;
};

template <class Scalar>
int finish_drift(const DriftFlags& f, const RunHeader& h, const BasicModelParams<Scalar>& params) {
  const std::size_t blocks = f.max_blocks.value_or(f.max_size / 2);
  const auto reports = verify_drift(enumerate_states(f.max_size, blocks), params, f.tolerance);
  if (f.out.format == "csv") {
    std::ostringstream os;
    drift_report_csv(os, h, reports);
    emit(f.out.out, os.str());
  } else {
    emit(f.out.out, dump(drift_report_json(h, reports, f.max_size, blocks, f.tolerance)));
  }
  const bool bad = std::any_of(reports.begin(), reports.end(), [](const auto& r) { return r.flagged; });
  if (bad) std::cerr << "drift-verify: closed forms disagree with enumeration on some states\n";
  return bad ? kVerificationFailed : kOk;
}

int cmd_drift_verify(const DriftFlags& f, RunHeader h) {
  h.subcommand = "drift-verify";
  const auto beta = parse_number(f.beta);
  const auto p = parse_number(f.p);
  if (std::holds_alternative<Rational>(beta) && std::holds_alternative<Rational>(p))
    return finish_drift(f, h, make_exact_params(std::get<Rational>(beta), std::get<Rational>(p)));
  return finish_drift(f, h, make_params(to_double(beta), to_double(p)));
}

struct SimulateFlags {
  Common out;
  SimFlags sim;
  bool samples = false;
};

int cmd_simulate(const SimulateFlags& f, RunHeader h) {
  h.subcommand = "simulate";
  h.seed = f.sim.seed;
  h.has_seed = true;
  const auto stats = run_batch(f.sim);
  if (f.out.format == "csv") {
    std::ostringstream os;
    stats_csv(os, h, stats);
    emit(f.out.out, os.str());
  } else {
    emit(f.out.out, dump(stats_json(h, stats, f.samples)));
  }
  return kOk;
}

struct TailFlags {
  Common out;
  SimFlags sim;
  std::string stats_path;
  std::optional<double> window_min;
  std::optional<double> window_max;
};

int cmd_tail(const TailFlags& f, RunHeader h) {
  h.subcommand = "tail";
  HittingStats stats;
  if (!f.stats_path.empty()) {
    std::ifstream in(f.stats_path);
    if (!in) throw UsageError("cannot read stats file: " + f.stats_path);
    json j;
    try {
      j = json::parse(in);
    } catch (const json::exception& e) {
      throw UsageError(std::string("malformed stats file: ") + e.what());
    }
    stats = stats_from_json(j);
  } else {
    if (f.sim.beta.empty()) throw UsageError("tail needs --stats or --beta to simulate inline");
    stats = run_batch(f.sim);
  }
  h.seed = stats.seed;
  h.has_seed = true;
  const TailWindow window{f.window_min.value_or(100.0), f.window_max.value_or(stats.cap / 10)};
  const auto fit = tail_fit(stats, window);
  const bool non_power_law = fit.slope < -3.0 || fit.looks_exponential();
  emit(f.out.out, dump(tail_json(h, fit, stats, non_power_law)));
  return kOk;
}

struct PhaseFlags {
  Common out;
  std::vector<double> ps{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  std::vector<double> betas{0.05, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.8, 0.9};
  std::string config = "1:1";
  std::uint64_t trials = 2000;
  std::uint64_t cap = 20000;
  std::uint64_t seed = 1;
  unsigned threads = default_threads();
};

int cmd_phase_scan(const PhaseFlags& f, RunHeader h) {
  h.subcommand = "phase-scan";
  h.seed = f.seed;
  h.has_seed = true;
  std::vector<std::pair<double, double>> cells;
  for (double p : f.ps)
    for (double beta : f.betas) {
      make_params(beta, p);  // validates the cell
      cells.emplace_back(p, beta);
    }
  const auto result = phase_scan(cells, Configuration::parse(f.config), f.trials, f.cap, f.seed, f.threads);
  std::ostringstream os;
  phase_csv(os, h, result, f.trials, f.cap);
  emit(f.out.out, os.str());
  return kOk;
}

struct FosterFlags {
  Common out;
  std::string beta;
  std::string p = "1/2";
  std::string fn = "f2";
  std::string criterion = "erg";
  std::size_t bound = 20;
  FosterOptions options;
};

int cmd_foster(const FosterFlags& f, RunHeader h) {
  h.subcommand = "foster";
  const auto verdict = check_foster(float_params(f.beta, f.p), LyapunovFunction::parse(f.fn), f.bound,
                                    parse_criterion(f.criterion), f.options);
  emit(f.out.out, dump(verdict_json(h, verdict)));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Drift checks and hitting-time simulation for the mixed voter/exclusion shock process"};
  app.set_version_flag("--version", "shockmix " SHOCKMIX_VERSION);
  app.require_subcommand(1);

  RunHeader header;
  header.invocation = invocation_of(argc, argv);

  DriftFlags drift;
  auto* dv = app.add_subcommand("drift-verify", "compare enumerated drifts of f1, f2 with their closed forms");
  dv->add_option("--beta", drift.beta, "voter weight, decimal or a/b")->required();
  dv->add_option("--p", drift.p, "exclusion jump probability")->capture_default_str();
  dv->add_option("--max-size", drift.max_size, "largest |S| scanned")->capture_default_str()->check(CLI::PositiveNumber);
  dv->add_option("--max-blocks", drift.max_blocks, "largest N scanned (default max-size/2)");
  dv->add_option("--tolerance", drift.tolerance, "float-mode residual tolerance")->capture_default_str();
  add_output(dv, drift.out, {"json", "csv"});

  SimulateFlags sim;
  auto* sm = app.add_subcommand("simulate", "Monte Carlo hitting times of the Heaviside set");
  add_sim_flags(sm, sim.sim, true);
  sm->add_flag("--samples", sim.samples, "include every uncensored sample in the JSON output");
  add_output(sm, sim.out, {"json", "csv"});

  TailFlags tail;
  auto* tl = app.add_subcommand("tail", "log-log slope of the hitting-time survival function");
  tl->add_option("--stats", tail.stats_path, "JSON written by simulate");
  add_sim_flags(tl, tail.sim, false);
  tl->add_option("--window-min", tail.window_min, "fit window start (default 100)");
  tl->add_option("--window-max", tail.window_max, "fit window end (default cap/10)");
  add_output(tl, tail.out, {"json"});

  PhaseFlags phase;
  auto* ps = app.add_subcommand("phase-scan", "exploratory hit fractions and f1 slopes over a (p, beta) grid");
  ps->add_option("--p-values", phase.ps, "comma-separated p grid")->delimiter(',')->capture_default_str();
  ps->add_option("--beta-values", phase.betas, "comma-separated beta grid")->delimiter(',')->capture_default_str();
  ps->add_option("--config", phase.config, "initial blocks")->capture_default_str();
  ps->add_option("--trials", phase.trials, "trajectories per cell")->capture_default_str()->check(CLI::PositiveNumber);
  ps->add_option("--cap", phase.cap, "step cap per trajectory")->capture_default_str()->check(CLI::PositiveNumber);
  ps->add_option("--seed", phase.seed, "base seed")->capture_default_str();
  ps->add_option("--threads", phase.threads, "worker threads")->check(CLI::PositiveNumber);
  add_output(ps, phase.out, {"csv"});
  phase.out.format = "csv";

  FosterFlags foster;
  auto* fo = app.add_subcommand("foster", "finite-scan evidence for a Foster-Lyapunov criterion");
  fo->add_option("--beta", foster.beta, "voter weight")->required();
  fo->add_option("--p", foster.p, "exclusion jump probability")->capture_default_str();
  fo->add_option("--fn", foster.fn, "f1 | f2 | phi:alpha | psi:alpha")->capture_default_str();
  fo->add_option("--criterion", foster.criterion, "erg | rec | tr1 | tr2 | mom")
      ->capture_default_str()
      ->check(CLI::IsMember({"erg", "rec", "tr1", "tr2", "mom"}));
  fo->add_option("--bound", foster.bound, "largest |S| scanned")->capture_default_str()->check(CLI::Range(4, 64));
  fo->add_option("--epsilon", foster.options.epsilon, "strict drift margin")->capture_default_str();
  fo->add_option("--moment-power", foster.options.moment_power, "power for the mom criterion")->capture_default_str();
  fo->add_option("--max-listed", foster.options.max_listed, "cap on listed exceptional states")->capture_default_str();
  add_output(fo, foster.out, {"json"});

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*dv) return cmd_drift_verify(drift, header);
    if (*sm) return cmd_simulate(sim, header);
    if (*tl) return cmd_tail(tail, header);
    if (*ps) return cmd_phase_scan(phase, header);
    if (*fo) return cmd_foster(foster, header);
  } catch (const InsufficientData& e) {
    std::cerr << "shockmix: insufficient data: " << e.what() << "\n";
    return kInsufficientData;
  } catch (const UsageError& e) {
    std::cerr << "shockmix: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "shockmix: " << e.what() << "\n";
    return kUsage;
  } catch (const json::exception& e) {
    std::cerr << "shockmix: " << e.what() << "\n";
    return kUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "shockmix: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

#pragma once

// JSON and CSV renderings of the core result types. Everything written here
// is a pure function of its inputs (no clocks, no host names) so identical
// runs produce identical files.

#include "json.hpp"
#include <ostream>
#include <string>
#include <vector>

#include "shockmix/analysis.hpp"
#include "shockmix/montecarlo.hpp"

namespace shockmix::cli {

using nlohmann::json;

struct RunHeader {
  std::string invocation;
  std::string subcommand;
  std::uint64_t seed = 0;
  bool has_seed = false;
};

json header_json(const RunHeader& h);
void write_csv_header(std::ostream& out, const RunHeader& h, const std::vector<std::string>& extra = {});

json to_json(const ModelParams& p);
json to_json(const ExactModelParams& p);

template <class Scalar>
json drift_report_json(const RunHeader& h, const std::vector<DriftReport<Scalar>>& reports, std::size_t max_size,
                       std::size_t max_blocks, double tolerance);
template <class Scalar>
void drift_report_csv(std::ostream& out, const RunHeader& h, const std::vector<DriftReport<Scalar>>& reports);

json stats_json(const RunHeader& h, const HittingStats& s, bool include_samples);
void stats_csv(std::ostream& out, const RunHeader& h, const HittingStats& s);

/// Rebuilds the parts of HittingStats that tail_fit needs from stats_json output.
HittingStats stats_from_json(const json& j);

json tail_json(const RunHeader& h, const TailFit& fit, const HittingStats& s, bool non_power_law);

json verdict_json(const RunHeader& h, const CriterionVerdict& v);

void phase_csv(std::ostream& out, const RunHeader& h, const std::vector<PhaseCell>& cells, std::uint64_t n_trials,
               std::uint64_t cap);

}  // namespace shockmix::cli

#pragma once

#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "srsim/metrics.hpp"
#include "srsim/scenario.hpp"
#include "srsim/simulation.hpp"

namespace srsim {

// Grid of scenarios to run: maps x deployments x OBSS/PD values x loads.
// The same deployment (seed = base_seed ^ deployment_index) is reused across
// every OBSS/PD and load cell; only WLAN_A's threshold varies unless sr_all.
struct SweepSpec {
  std::vector<double> map_sizes_m = {25.0, 50.0, 100.0};
  int n_deployments = 50;
  std::vector<double> obss_pd_grid_dbm;  // default: -82..-62, 1 dB steps
  std::vector<double> loads_mbps;        // default: 16 loads spanning 1..100
  std::uint64_t base_seed = 1;
  int jobs = 0;  // 0 = hardware concurrency

  int n_wlans = 10;
  int stas_per_wlan = 1;
  double sta_dist_min_m = 1.0;
  double sta_dist_max_m = 10.0;
  double sim_time_s = 10.0;
  std::size_t queue_capacity = 100;
  bool sr_all = false;  // apply the swept threshold to every WLAN

  std::size_t cell_count() const {
    return map_sizes_m.size() * static_cast<std::size_t>(n_deployments) *
           obss_pd_grid_dbm.size() * loads_mbps.size();
  }
};

std::vector<double> default_obss_pd_grid();
std::vector<double> default_load_grid_mbps();

// Applies the defaults above to empty grids.
void finalize_sweep_spec(SweepSpec& spec);

struct SweepParseResult {
  SweepSpec spec;
  std::vector<ParseError> errors;
  bool ok() const { return errors.empty(); }
};

// Same line-oriented `key = value` format as scenario configs.
SweepParseResult parse_sweep_spec(std::string_view text);

struct SweepCell {
  std::size_t index = 0;  // position in the canonical grid order
  double map_m = 0.0;
  int deployment_index = 0;
  std::uint64_t deployment_seed = 0;
  double obss_pd_dbm = 0.0;
  double load_mbps = 0.0;
  RunResult result;
  std::string status = "ok";  // "ok" or an error message
};

// Builds the full SimulationConfig for one cell; a CSV row's fingerprint plus
// the sweep spec reproduce the exact run.
SimulationConfig cell_config(const SweepSpec& spec, double map_m,
                             std::uint64_t deployment_seed, double obss_pd_dbm,
                             double load_mbps);

// Runs every cell on a small worker pool. Results come back in canonical
// grid order regardless of the parallelism degree.
std::vector<SweepCell> run_sweep(
    const SweepSpec& spec,
    const std::function<void(std::size_t done, std::size_t total)>& progress = {});

// Per-WLAN rows: map_m, deployment_seed, obss_pd_dbm, load_mbps, wlan_id,
// is_wlan_a, throughput_mbps, occupancy, mean_delay_ms, delivered, dropped,
// status.
void write_results_csv(std::span<const SweepCell> cells, std::ostream& out);

// One row per (map, deployment, load): the OBSS/PD maximizing WLAN_A's
// throughput, with WLAN_A and other-WLAN figures at that threshold and at
// the legacy (-82 dBm) threshold.
void write_best_csv(std::span<const SweepCell> cells, std::ostream& out);

}  // namespace srsim

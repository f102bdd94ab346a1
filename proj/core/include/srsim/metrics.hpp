#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "srsim/phy.hpp"

namespace srsim {

struct WlanMetrics {
  double throughput_bps = 0.0;
  double occupancy = 0.0;  // fraction of sim time, failed frames included
  std::optional<double> mean_delay_s;
  std::optional<double> min_delay_s;
  std::uint64_t delivered_packets = 0;
  std::uint64_t dropped_packets = 0;  // queue drops + no-link drops
  double airtime_us = 0.0;

  // conservation bookkeeping
  std::uint64_t generated_packets = 0;
  std::uint64_t dropped_queue = 0;
  std::uint64_t dropped_no_link = 0;
  std::uint64_t residual_packets = 0;
  std::uint64_t in_flight_packets = 0;
};

// Identifies one sweep cell; enough to re-run it in isolation.
struct RunFingerprint {
  double map_width_m = 25.0;
  double map_height_m = 25.0;
  std::uint64_t deployment_seed = 1;
  double obss_pd_dbm = -82.0;
  double load_bps = 50e6;
};

struct RunResult {
  RunFingerprint fingerprint;
  std::vector<WlanMetrics> wlans;
  TimeNs final_clock_ns = 0;
  std::uint64_t events_dispatched = 0;
  double wallclock_s = 0.0;
  // time during which >= 2 WLANs had frames on air simultaneously
  double overlap_any_us = 0.0;
  double overlap_data_us = 0.0;
};

double throughput(double delivered_bits, double sim_time_s);

double occupancy(double airtime_us, double sim_time_us);

// Mean over delivered packets only; callers map "no deliveries" to the CSV
// undefined marker, never to zero.
double mean_delay(std::span<const double> delays_s);

// Right-continuous ECDF at the sorted distinct sample points.
std::vector<std::pair<double, double>> ecdf(std::vector<double> samples);

// argmax of WLAN_A throughput over the OBSS/PD grid, ties broken toward the
// most negative threshold. Throws if a grid point is missing.
std::pair<double, WlanMetrics> best_obss_pd(
    std::span<const std::pair<double, WlanMetrics>> per_threshold,
    std::span<const double> expected_grid);

}  // namespace srsim

#include "srsim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace srsim {

double throughput(double delivered_bits, double sim_time_s) {
  return delivered_bits / sim_time_s;
}

double occupancy(double airtime_us, double sim_time_us) {
  return airtime_us / sim_time_us;
}

double mean_delay(std::span<const double> delays_s) {
  if (delays_s.empty()) throw std::invalid_argument("mean_delay of an empty sample");
  return std::accumulate(delays_s.begin(), delays_s.end(), 0.0) /
         static_cast<double>(delays_s.size());
}

std::vector<std::pair<double, double>> ecdf(std::vector<double> samples) {
  if (samples.empty()) throw std::invalid_argument("ecdf of an empty sample");
  std::sort(samples.begin(), samples.end());
  std::vector<std::pair<double, double>> out;
  const double n = static_cast<double>(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (i + 1 < samples.size() && samples[i + 1] == samples[i]) continue;
    out.emplace_back(samples[i], static_cast<double>(i + 1) / n);
  }
  return out;
}

std::pair<double, WlanMetrics> best_obss_pd(
    std::span<const std::pair<double, WlanMetrics>> per_threshold,
    std::span<const double> expected_grid) {
  for (double g : expected_grid) {
    const bool present = std::any_of(per_threshold.begin(), per_threshold.end(),
                                     [g](const auto& c) { return c.first == g; });
    if (!present)
      throw std::invalid_argument("incomplete OBSS/PD grid: missing " + std::to_string(g));
  }
  std::vector<std::pair<double, WlanMetrics>> cells(per_threshold.begin(),
                                                    per_threshold.end());
  std::sort(cells.begin(), cells.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  const auto* best = &cells.front();
  for (const auto& c : cells) {
    if (c.second.throughput_bps > best->second.throughput_bps) best = &c;
  }
  return *best;
}

}  // namespace srsim

#include "srsim/channel.hpp"

#include <algorithm>
#include <cmath>

namespace srsim {

double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }

double mw_to_dbm(double mw) { return 10.0 * std::log10(mw); }

double path_loss_db(double distance_m, const ChannelModelParams& p) {
  const double d = std::max(distance_m, p.min_distance_m);
  return p.path_loss_intercept_db + 10.0 * p.path_loss_exponent * std::log10(d) +
         p.wall_attenuation_db * p.walls_per_m * d;
}

double received_power_dbm(double tx_power_dbm, double distance_m,
                          const ChannelModelParams& p) {
  return tx_power_dbm + p.gain_tx_db + p.gain_rx_db - path_loss_db(distance_m, p);
}

double sinr_db(double signal_dbm, std::span<const double> interferers_dbm,
               double noise_dbm) {
  double denom_mw = dbm_to_mw(noise_dbm);
  for (double i : interferers_dbm) denom_mw += dbm_to_mw(i);
  return mw_to_dbm(dbm_to_mw(signal_dbm) / denom_mw);
}

}  // namespace srsim

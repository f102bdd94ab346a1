#pragma once

#include <span>

namespace srsim {

// TMB 5 GHz indoor propagation constants plus link gains and the noise floor.
struct ChannelModelParams {
  double path_loss_intercept_db = 54.120;
  double path_loss_exponent = 2.06067;
  double wall_attenuation_db = 5.25;  // per wall
  double walls_per_m = 0.1467;
  double noise_dbm = -95.0;
  double gain_tx_db = 0.0;
  double gain_rx_db = 0.0;
  double min_distance_m = 0.1;  // the model diverges at d -> 0
};

double dbm_to_mw(double dbm);
double mw_to_dbm(double mw);

// L0 + 10*gamma*log10(d) + k*W*d. Distances below min_distance_m clamp.
double path_loss_db(double distance_m, const ChannelModelParams& p = {});

double received_power_dbm(double tx_power_dbm, double distance_m,
                          const ChannelModelParams& p = {});

// Interference adds in the linear domain; result back in dB.
double sinr_db(double signal_dbm, std::span<const double> interferers_dbm,
               double noise_dbm);

}  // namespace srsim

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "srsim/channel.hpp"
#include "srsim/phy.hpp"
#include "srsim/spatial_reuse.hpp"

namespace srsim {

struct MapSpec {
  double width_m = 25.0;
  double height_m = 25.0;
};

struct Position {
  double x = 0.0;
  double y = 0.0;
};

double distance_m(const Position& a, const Position& b);

enum class NodeRole { kAp, kSta };

struct NodeSpec {
  int node_id = -1;
  NodeRole role = NodeRole::kAp;
  Position pos;
  double tx_power_dbm = 20.0;
  double cca_cs_dbm = kDefaultCcaCsDbm;
  SrConfig sr;
};

struct WlanSpec {
  int wlan_id = 0;
  int bss_color = 0;
  std::optional<int> srg_id;
  NodeSpec ap;
  std::vector<NodeSpec> stas;
};

struct DeploymentSpec {
  MapSpec map;
  std::vector<WlanSpec> wlans;
  int channel = 0;  // one shared channel
  std::uint64_t seed = 1;
};

// Everything one scenario run needs. Generation parameters are retained so a
// config (or a sweep-cell fingerprint) reproduces its deployment exactly.
struct SimulationConfig {
  DeploymentSpec deployment;
  double traffic_load_bps = 50e6;
  double sim_time_s = 10.0;
  std::size_t queue_capacity = 100;
  int preload_packets = 0;  // queued at t=0; handy for fixtures
  PhyMacConstants phy;
  ChannelModelParams channel_model;

  // generation inputs
  int n_wlans = 10;
  int stas_per_wlan = 1;
  double sta_dist_min_m = 1.0;
  double sta_dist_max_m = 10.0;

  // global SR settings applied at deployment build time
  bool sr_enabled = true;
  bool sr_wlan_a_only = true;
  double obss_pd_nonsrg_dbm = kObssPdMinDbm;
  double obss_pd_srg_dbm = kObssPdMinDbm;
  double tx_pwr_ref_dbm = 21.0;
  double tx_power_dbm = 20.0;
  double cca_cs_dbm = kDefaultCcaCsDbm;
};

// Places WLAN 0's AP at the exact map center and the remaining APs uniformly
// at random; each STA sits on a random-radius circle around its AP, clipped
// to the map. Pure function of its arguments.
DeploymentSpec generate_deployment(const MapSpec& map, int n_wlans,
                                   int stas_per_wlan, double sta_dist_min_m,
                                   double sta_dist_max_m, std::uint64_t seed);

// Applies the global SR keys of `cfg` to a deployment: WLAN 0 only, or every
// WLAN when sr_wlan_a_only is false.
void apply_sr_settings(DeploymentSpec& dep, const SimulationConfig& cfg);

// Rebuilds cfg.deployment from the generation inputs currently in cfg.
void regenerate_deployment(SimulationConfig& cfg);

struct ParseError {
  int line = 0;
  std::string key;
  std::string message;
};

struct ParseResult {
  SimulationConfig config;
  std::vector<ParseError> errors;
  bool ok() const { return errors.empty(); }
};

// Line-oriented `key = value` format with '#' comments. Unknown keys,
// malformed values and out-of-range values are reported with line numbers.
// Table-2 defaults apply to absent keys. Explicit `wlan.<i>.*` keys override
// random generation.
ParseResult parse_config(std::string_view text);

// Checks every scenario invariant; returns human-readable violations.
std::vector<std::string> validate_config(const SimulationConfig& cfg);

// Serializes the deployment (explicit node list) plus run parameters in the
// config format; output is byte-stable for identical inputs.
std::string write_deployment_config(const SimulationConfig& cfg);

}  // namespace srsim

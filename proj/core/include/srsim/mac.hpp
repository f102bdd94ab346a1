#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "srsim/engine.hpp"
#include "srsim/phy.hpp"
#include "srsim/rng.hpp"
#include "srsim/scenario.hpp"
#include "srsim/spatial_reuse.hpp"
#include "srsim/traffic.hpp"

namespace srsim {

enum class MacState {
  kIdle,
  kSensingBackoff,
  kWaitCts,
  kTransmittingData,
  kWaitBack,
  kNavBlocked,
  kReceiving,
};

const char* to_string(MacState s);

struct BackoffState {
  int remaining_slots = 0;
  bool frozen = true;
};

// Uniform in [0, cw]; the contention window is fixed and never doubles.
int draw_backoff(RngStream& rng, int cw);

// One on-air (or scheduled) frame.
struct FrameTransmission {
  std::uint64_t id = 0;
  FrameKind kind = FrameKind::kRts;
  int tx_node = -1;
  int dest_node = -1;
  int wlan_id = -1;
  int bss_color = 0;
  std::optional<int> srg_id;
  double tx_power_dbm = 0.0;
  TimeNs start_ns = 0;
  TimeNs end_ns = 0;
  TimeNs nav_end_ns = 0;  // announced end of the protected exchange
  int n_agg = 0;          // DATA only
};

// Pending transmission state of one RTS/CTS/DATA/BACK exchange at the AP.
struct TxopState {
  bool active = false;
  int dest_node = -1;
  int n_agg = 0;
  const McsEntry* mcs = nullptr;
  double tx_power_dbm = 0.0;
  bool sr_based = false;
  TimeNs nav_end_ns = 0;
  TimeNs data_dur_ns = 0;
  std::vector<Packet> ampdu;
};

// Full per-node runtime state: static configuration plus the DCF machine.
struct Node {
  // configuration
  int id = -1;
  int wlan_id = -1;
  NodeRole role = NodeRole::kSta;
  Position pos;
  double tx_power_dbm = 20.0;
  double cca_cs_dbm = kDefaultCcaCsDbm;
  SrConfig sr;
  std::vector<int> sta_node_ids;  // APs: associated STAs, round-robin order

  // machine
  MacState state = MacState::kIdle;
  BackoffState backoff;
  TimeNs nav_end_ns = 0;
  bool transmitting = false;
  TxopState txop;

  // SR power-limit lifecycle
  PowerLimitState limits;
  std::set<std::uint64_t> triggers_on_air;

  // engine handles
  EventHandle tick_ev;
  EventHandle timeout_ev;
  EventHandle nav_ev;

  // traffic (AP)
  FifoQueue queue{100};
  RngStream rng;
  int next_sta_rr = 0;

  // counters
  std::uint64_t generated = 0;
  std::uint64_t dropped_no_link = 0;

  bool is_contending() const {
    return role == NodeRole::kAp && !txop.active && !queue.empty();
  }
};

enum class ChannelState { kIdle, kBusy };

// Threshold this node applies to one specific frame: CCA/CS for intra-BSS
// frames (and for everything when SR is off), the matching OBSS/PD otherwise.
double sensing_threshold_for(const Node& node, const FrameTransmission& f);

// Busy iff any active frame not transmitted by the node itself is received
// at or above its classification-specific threshold.
ChannelState sense_channel(
    const Node& node, std::span<const FrameTransmission> active,
    const std::function<double(const FrameTransmission&)>& rx_dbm_at_node);

// Applies a *decoded* frame's announced protection to an observer that is not
// the frame's addressee. Frames ignored through an SR opportunity (received
// below the applicable OBSS/PD) set no NAV. Returns the new NAV end if it
// advanced.
std::optional<TimeNs> set_nav(Node& node, const FrameTransmission& f, double rx_dbm);

}  // namespace srsim

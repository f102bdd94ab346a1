#include "srsim/mac.hpp"

namespace srsim {

const char* to_string(MacState s) {
  switch (s) {
    case MacState::kIdle: return "IDLE";
    case MacState::kSensingBackoff: return "SENSING_BACKOFF";
    case MacState::kWaitCts: return "WAIT_CTS";
    case MacState::kTransmittingData: return "TRANSMITTING_DATA";
    case MacState::kWaitBack: return "WAIT_BACK";
    case MacState::kNavBlocked: return "NAV_BLOCKED";
    case MacState::kReceiving: return "RECEIVING";
  }
  return "?";
}

int draw_backoff(RngStream& rng, int cw) {
  return static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(cw)));
}

double sensing_threshold_for(const Node& node, const FrameTransmission& f) {
  const FrameClassification cls = classify_frame(node.sr, f.bss_color, f.srg_id);
  return applicable_threshold(node.sr, cls, node.cca_cs_dbm);
}

ChannelState sense_channel(
    const Node& node, std::span<const FrameTransmission> active,
    const std::function<double(const FrameTransmission&)>& rx_dbm_at_node) {
  for (const FrameTransmission& f : active) {
    if (f.tx_node == node.id) continue;
    if (rx_dbm_at_node(f) >= sensing_threshold_for(node, f)) return ChannelState::kBusy;
  }
  return ChannelState::kIdle;
}

std::optional<TimeNs> set_nav(Node& node, const FrameTransmission& f, double rx_dbm) {
  if (node.id == f.dest_node || node.id == f.tx_node) return std::nullopt;
  if (rx_dbm < sensing_threshold_for(node, f)) return std::nullopt;
  if (f.nav_end_ns <= node.nav_end_ns) return std::nullopt;
  node.nav_end_ns = f.nav_end_ns;
  return node.nav_end_ns;
}

}  // namespace srsim

#include "srsim/phy.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace srsim {

TimeNs ns_from_us(double us) { return static_cast<TimeNs>(std::llround(us * 1000.0)); }

const char* to_string(FrameKind k) {
  switch (k) {
    case FrameKind::kRts: return "RTS";
    case FrameKind::kCts: return "CTS";
    case FrameKind::kDataAmpdu: return "DATA";
    case FrameKind::kBlockAck: return "BACK";
  }
  return "?";
}

int McsEntry::data_bits_per_symbol(int n_subcarriers, int n_spatial_streams) const {
  return n_subcarriers * bits_per_subcarrier * coding_num * n_spatial_streams / coding_den;
}

namespace {

constexpr std::array<McsEntry, 12> kMcsTable{{
    {0, 1, 1, 2, -82.0},
    {1, 2, 1, 2, -79.0},
    {2, 2, 3, 4, -77.0},
    {3, 4, 1, 2, -74.0},
    {4, 4, 3, 4, -70.0},
    {5, 6, 2, 3, -66.0},
    {6, 6, 3, 4, -65.0},
    {7, 6, 5, 6, -64.0},
    {8, 8, 3, 4, -59.0},
    {9, 8, 5, 6, -57.0},
    {10, 10, 3, 4, -54.0},
    {11, 10, 5, 6, -52.0},
}};

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return (a + b - 1) / b; }

}  // namespace

std::span<const McsEntry> default_mcs_table() { return kMcsTable; }

const McsEntry* select_mcs(double rx_power_dbm, std::span<const McsEntry> table) {
  const McsEntry* best = nullptr;
  for (const McsEntry& e : table) {
    if (rx_power_dbm >= e.min_sensitivity_dbm) best = &e;
  }
  return best;
}

double data_rate_bps(const McsEntry& mcs, const PhyMacConstants& c) {
  const int bits = mcs.data_bits_per_symbol(c.n_subcarriers, c.n_spatial_streams);
  return static_cast<double>(bits) / (c.symbol_us * 1e-6);
}

TimeNs frame_duration_ns(FrameKind kind, int n_agg, const McsEntry* mcs,
                         const PhyMacConstants& c) {
  const TimeNs legacy_preamble = ns_from_us(c.legacy_preamble_us);
  switch (kind) {
    case FrameKind::kRts:
      return legacy_preamble +
             ceil_div(c.service_field_bits + c.rts_bits, c.legacy_symbol_bits) *
                 c.legacy_symbol_ns();
    case FrameKind::kCts:
      return legacy_preamble +
             ceil_div(c.service_field_bits + c.cts_bits, c.legacy_symbol_bits) *
                 c.legacy_symbol_ns();
    case FrameKind::kBlockAck:
      return ns_from_us(c.block_ack_us);
    case FrameKind::kDataAmpdu: {
      if (mcs == nullptr) throw std::invalid_argument("DATA frame needs an MCS");
      if (n_agg < 1 || n_agg > c.max_ampdu_frames)
        throw std::invalid_argument("A-MPDU size out of range");
      const std::int64_t payload_bits =
          c.service_field_bits +
          static_cast<std::int64_t>(n_agg) * (c.mac_header_bits + c.data_packet_bits);
      const std::int64_t symbols = ceil_div(
          payload_bits, mcs->data_bits_per_symbol(c.n_subcarriers, c.n_spatial_streams));
      return legacy_preamble + ns_from_us(c.he_su_preamble_us) + symbols * c.symbol_ns();
    }
  }
  throw std::invalid_argument("unknown frame kind");
}

double frame_duration_us(FrameKind kind, int n_agg, const McsEntry* mcs,
                         const PhyMacConstants& c) {
  return static_cast<double>(frame_duration_ns(kind, n_agg, mcs, c)) / 1000.0;
}

const char* to_string(RxOutcome o) {
  switch (o) {
    case RxOutcome::kSuccess: return "success";
    case RxOutcome::kFailureCca: return "failure_cca";
    case RxOutcome::kFailureCapture: return "failure_capture";
  }
  return "?";
}

RxOutcome reception_check(double rx_power_dbm, double min_sinr_over_frame_db,
                          double cca_cs_dbm, double ce_db) {
  if (rx_power_dbm < cca_cs_dbm) return RxOutcome::kFailureCca;
  if (min_sinr_over_frame_db < ce_db) return RxOutcome::kFailureCapture;
  return RxOutcome::kSuccess;
}

}  // namespace srsim

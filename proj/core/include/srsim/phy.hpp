#pragma once

#include <cstdint>
#include <span>

namespace srsim {

// Simulation time is an integer count of nanoseconds: every MAC/PHY duration
// in use is exact in ns, and integer keys keep event ordering deterministic.
using TimeNs = std::int64_t;

inline constexpr TimeNs kNsPerUs = 1000;

TimeNs ns_from_us(double us);

enum class FrameKind { kRts, kCts, kDataAmpdu, kBlockAck };

const char* to_string(FrameKind k);

// One row of the 20 MHz single-stream HE rate ladder.
struct McsEntry {
  int index = 0;
  int bits_per_subcarrier = 1;
  int coding_num = 1;
  int coding_den = 2;
  double min_sensitivity_dbm = -82.0;

  // N_sc * bits * rate * N_ss; integral for every ladder entry.
  int data_bits_per_symbol(int n_subcarriers, int n_spatial_streams) const;
};

// Full PHY/MAC constant set; defaults are the 11ax 20 MHz values the
// simulator is calibrated against.
struct PhyMacConstants {
  double legacy_symbol_us = 4.0;
  double symbol_us = 16.0;  // OFDM symbol incl. GI-32
  int n_subcarriers = 234;
  int n_spatial_streams = 1;
  double slot_us = 9.0;
  double sifs_us = 16.0;
  double difs_us = 34.0;
  double pifs_us = 25.0;
  double legacy_preamble_us = 20.0;
  double he_su_preamble_us = 100.0;
  double ack_us = 28.0;
  double block_ack_us = 32.0;
  int legacy_symbol_bits = 24;
  int data_packet_bits = 12000;
  int max_ampdu_frames = 64;
  int rts_bits = 160;
  int cts_bits = 112;
  int service_field_bits = 16;
  int mac_header_bits = 320;
  int contention_window = 15;  // fixed; never doubles
  double capture_effect_db = 10.0;

  TimeNs slot_ns() const { return ns_from_us(slot_us); }
  TimeNs sifs_ns() const { return ns_from_us(sifs_us); }
  TimeNs difs_ns() const { return ns_from_us(difs_us); }
  TimeNs symbol_ns() const { return ns_from_us(symbol_us); }
  TimeNs legacy_symbol_ns() const { return ns_from_us(legacy_symbol_us); }
};

// MCS0..11 with the 20 MHz minimum receiver sensitivities.
std::span<const McsEntry> default_mcs_table();

// Highest-index entry whose sensitivity the received power meets, or nullptr
// when even MCS0 cannot be decoded (no usable link).
const McsEntry* select_mcs(double rx_power_dbm,
                           std::span<const McsEntry> table = default_mcs_table());

double data_rate_bps(const McsEntry& mcs, const PhyMacConstants& c = {});

TimeNs frame_duration_ns(FrameKind kind, int n_agg, const McsEntry* mcs,
                         const PhyMacConstants& c = {});

double frame_duration_us(FrameKind kind, int n_agg, const McsEntry* mcs,
                         const PhyMacConstants& c = {});

enum class RxOutcome { kSuccess, kFailureCca, kFailureCapture };

const char* to_string(RxOutcome o);

// A frame is decoded iff its power clears the sensing threshold and the SINR
// stayed above the capture-effect threshold for the whole airtime.
RxOutcome reception_check(double rx_power_dbm, double min_sinr_over_frame_db,
                          double cca_cs_dbm, double ce_db);

}  // namespace srsim

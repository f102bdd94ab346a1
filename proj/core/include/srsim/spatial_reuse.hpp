#pragma once

#include <cstdint>
#include <map>
#include <optional>

namespace srsim {

inline constexpr double kObssPdMinDbm = -82.0;
inline constexpr double kObssPdMaxDbm = -62.0;
inline constexpr double kDefaultCcaCsDbm = -82.0;

// Per-node OBSS PD spatial-reuse settings. With both thresholds at
// OBSS/PD_min the behavior is identical to a node with SR disabled.
struct SrConfig {
  bool enabled = false;
  int bss_color = 0;
  std::optional<int> srg_id;
  double obss_pd_nonsrg_dbm = kObssPdMinDbm;
  double obss_pd_srg_dbm = kObssPdMinDbm;
  double tx_pwr_ref_dbm = 21.0;  // 21 dBm for single-stream devices
};

enum class FrameClassification { kIntraBss, kInterBssSrg, kInterBssNonSrg };

const char* to_string(FrameClassification c);

// BSS color match -> intra-BSS; otherwise SRG membership decides the
// inter-BSS subcategory.
FrameClassification classify_frame(const SrConfig& observer, int frame_color,
                                   std::optional<int> frame_srg);

// Sensing threshold applied to a frame of the given classification.
// Intra-BSS frames (and everything, when SR is off) use the legacy CCA/CS.
double applicable_threshold(const SrConfig& observer, FrameClassification cls,
                            double cca_cs_dbm);

enum class SrDetection { kOpportunity, kBusy, kUndetected };

const char* to_string(SrDetection d);

// The two detection conditions: the header must be decodable
// (p_rx >= CCA/CS) and the power must stay under the OBSS/PD threshold.
SrDetection detect_opportunity(double p_rx_dbm, double cca_cs_dbm,
                               double obss_pd_dbm);

// TX power cap tied to the OBSS/PD threshold used to detect the opportunity.
// At or below OBSS/PD_min the power is unconstrained (device maximum).
double max_tx_power(double obss_pd_dbm, double tx_pwr_ref_dbm,
                    double device_max_dbm);

// Largest OBSS/PD a node transmitting at tx_pwr_dbm may use.
double obss_pd_upper_bound(double tx_pwr_dbm, double tx_pwr_ref_dbm);

// Power limits collected from concurrently detected opportunities, keyed by
// the triggering frame; the most restrictive one binds.
struct PowerLimitState {
  std::map<std::uint64_t, double> pending;  // frame id -> limit (dBm)

  std::optional<double> active_limit_dbm() const;
  void clear() { pending.clear(); }
  bool empty() const { return pending.empty(); }
};

PowerLimitState& merge_power_limits(PowerLimitState& state, std::uint64_t frame_id,
                                    double new_limit_dbm);

}  // namespace srsim

#include "srsim/spatial_reuse.hpp"

#include <algorithm>
#include <stdexcept>

namespace srsim {

const char* to_string(FrameClassification c) {
  switch (c) {
    case FrameClassification::kIntraBss: return "intra_bss";
    case FrameClassification::kInterBssSrg: return "inter_bss_srg";
    case FrameClassification::kInterBssNonSrg: return "inter_bss_non_srg";
  }
  return "?";
}

FrameClassification classify_frame(const SrConfig& observer, int frame_color,
                                   std::optional<int> frame_srg) {
  if (observer.bss_color == frame_color) return FrameClassification::kIntraBss;
  if (observer.srg_id && frame_srg && *observer.srg_id == *frame_srg)
    return FrameClassification::kInterBssSrg;
  return FrameClassification::kInterBssNonSrg;
}

double applicable_threshold(const SrConfig& observer, FrameClassification cls,
                            double cca_cs_dbm) {
  if (!observer.enabled || cls == FrameClassification::kIntraBss) return cca_cs_dbm;
  return cls == FrameClassification::kInterBssSrg ? observer.obss_pd_srg_dbm
                                                  : observer.obss_pd_nonsrg_dbm;
}

const char* to_string(SrDetection d) {
  switch (d) {
    case SrDetection::kOpportunity: return "opportunity";
    case SrDetection::kBusy: return "busy";
    case SrDetection::kUndetected: return "undetected";
  }
  return "?";
}

SrDetection detect_opportunity(double p_rx_dbm, double cca_cs_dbm,
                               double obss_pd_dbm) {
  if (obss_pd_dbm < cca_cs_dbm)
    throw std::invalid_argument("OBSS/PD threshold below CCA/CS");
  if (p_rx_dbm < cca_cs_dbm) return SrDetection::kUndetected;
  if (p_rx_dbm < obss_pd_dbm) return SrDetection::kOpportunity;
  return SrDetection::kBusy;
}

double max_tx_power(double obss_pd_dbm, double tx_pwr_ref_dbm,
                    double device_max_dbm) {
  if (obss_pd_dbm <= kObssPdMinDbm) return device_max_dbm;
  return std::min(device_max_dbm,
                  tx_pwr_ref_dbm - (obss_pd_dbm - kObssPdMinDbm));
}

double obss_pd_upper_bound(double tx_pwr_dbm, double tx_pwr_ref_dbm) {
  return std::max(kObssPdMinDbm,
                  std::min(kObssPdMaxDbm,
                           kObssPdMinDbm + (tx_pwr_ref_dbm - tx_pwr_dbm)));
}

std::optional<double> PowerLimitState::active_limit_dbm() const {
  if (pending.empty()) return std::nullopt;
  double limit = pending.begin()->second;
  for (const auto& [id, l] : pending) limit = std::min(limit, l);
  return limit;
}

PowerLimitState& merge_power_limits(PowerLimitState& state, std::uint64_t frame_id,
                                    double new_limit_dbm) {
  auto [it, inserted] = state.pending.emplace(frame_id, new_limit_dbm);
  if (!inserted) it->second = std::min(it->second, new_limit_dbm);
  return state;
}

}  // namespace srsim

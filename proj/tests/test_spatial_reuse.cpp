#include <cmath>

#include "doctest.h"
#include "srsim/rng.hpp"
#include "srsim/spatial_reuse.hpp"

using namespace srsim;

namespace {

SrConfig sr_node(int color, std::optional<int> srg = std::nullopt,
                 double nonsrg = -72.0, double srg_thr = -72.0) {
  SrConfig c;
  c.enabled = true;
  c.bss_color = color;
  c.srg_id = srg;
  c.obss_pd_nonsrg_dbm = nonsrg;
  c.obss_pd_srg_dbm = srg_thr;
  return c;
}

}  // namespace

TEST_SUITE("spatial_reuse") {

TEST_CASE("frame classification") {
  CHECK(classify_frame(sr_node(1), 1, std::nullopt) == FrameClassification::kIntraBss);
  CHECK(classify_frame(sr_node(1, 3), 2, 3) == FrameClassification::kInterBssSrg);
  CHECK(classify_frame(sr_node(1, 3), 2, std::nullopt) ==
        FrameClassification::kInterBssNonSrg);
  CHECK(classify_frame(sr_node(1, 3), 2, 4) == FrameClassification::kInterBssNonSrg);
  CHECK(classify_frame(sr_node(1), 2, 3) == FrameClassification::kInterBssNonSrg);
}

TEST_CASE("applicable threshold") {
  SrConfig off = sr_node(1);
  off.enabled = false;
  CHECK(applicable_threshold(off, FrameClassification::kInterBssNonSrg, -82.0) == -82.0);
  CHECK(applicable_threshold(off, FrameClassification::kIntraBss, -82.0) == -82.0);

  const SrConfig on = sr_node(1, 3, -72.0, -68.0);
  CHECK(applicable_threshold(on, FrameClassification::kInterBssNonSrg, -82.0) == -72.0);
  CHECK(applicable_threshold(on, FrameClassification::kInterBssSrg, -82.0) == -68.0);
  CHECK(applicable_threshold(on, FrameClassification::kIntraBss, -82.0) == -82.0);
}

TEST_CASE("opportunity detection") {
  CHECK(detect_opportunity(-75.0, -82.0, -72.0) == SrDetection::kOpportunity);
  CHECK(detect_opportunity(-70.0, -82.0, -72.0) == SrDetection::kBusy);
  CHECK(detect_opportunity(-85.0, -82.0, -72.0) == SrDetection::kUndetected);
  CHECK_THROWS(detect_opportunity(-75.0, -70.0, -72.0));  // threshold below CCA/CS

  // monotone: raising the threshold keeps an opportunity an opportunity
  RngStream rng(21, 0);
  for (int i = 0; i < 1000; ++i) {
    const double p = -82.0 + rng.uniform01() * 20.0;
    const double t1 = -82.0 + rng.uniform01() * 20.0;
    const double t2 = t1 + rng.uniform01() * (kObssPdMaxDbm - t1);
    if (detect_opportunity(p, -82.0, t1) == SrDetection::kOpportunity)
      CHECK(detect_opportunity(p, -82.0, t2) == SrDetection::kOpportunity);
  }
}

TEST_CASE("max TX power under SR") {
  CHECK(max_tx_power(-82.0, 21.0, 20.0) == 20.0);  // unconstrained at OBSS/PD_min
  CHECK(max_tx_power(-72.0, 21.0, 20.0) == 11.0);
  CHECK(max_tx_power(-62.0, 21.0, 20.0) == 1.0);

  // full 21-point grid: 20, 20, then 19 down to 1 dBm
  for (int i = 0; i < 21; ++i) {
    const double obss = -82.0 + i;
    const double expect = i <= 1 ? 20.0 : 21.0 - i;
    CHECK(max_tx_power(obss, 21.0, 20.0) == expect);
  }

  // unclipped: linear with slope -1, total drop of 20 dB across the range
  for (double obss = -81.0; obss <= -62.0; obss += 0.5)
    CHECK(max_tx_power(obss, 21.0, 1000.0) == 21.0 - (obss + 82.0));
  CHECK(max_tx_power(-62.0, 21.0, 1000.0) == 1.0);
}

TEST_CASE("OBSS/PD upper bound") {
  CHECK(obss_pd_upper_bound(21.0, 21.0) == -82.0);
  CHECK(obss_pd_upper_bound(15.0, 21.0) == -76.0);
  CHECK(obss_pd_upper_bound(1.0, 21.0) == -62.0);
  CHECK(obss_pd_upper_bound(25.0, 21.0) == -82.0);  // clipped from below

  // randomized grid vs direct re-evaluation of the bound expression
  RngStream rng(22, 0);
  for (int i = 0; i < 100; ++i) {
    const double tx = rng.uniform01() * 30.0;
    const double ref = rng.uniform01() < 0.5 ? 21.0 : 25.0;
    const double direct =
        std::max(-82.0, std::min(-62.0, -82.0 + (ref - tx)));
    CHECK(obss_pd_upper_bound(tx, ref) == direct);
  }

  // Eq-consistency: the SR-limited power always satisfies the bound
  for (double obss = -82.0; obss <= -62.0; obss += 0.25) {
    const double p = max_tx_power(obss, 21.0, 20.0);
    CHECK(obss <= obss_pd_upper_bound(p, 21.0) + 1e-12);
  }
}

TEST_CASE("power limit merging keeps the most restrictive value") {
  PowerLimitState s;
  merge_power_limits(s, 1, 11.0);
  CHECK(*s.active_limit_dbm() == 11.0);
  merge_power_limits(s, 2, 6.0);
  CHECK(*s.active_limit_dbm() == 6.0);

  PowerLimitState t;
  merge_power_limits(t, 2, 6.0);
  merge_power_limits(t, 1, 11.0);
  CHECK(*t.active_limit_dbm() == 6.0);  // order-independent

  t.clear();
  CHECK(!t.active_limit_dbm().has_value());
}

TEST_CASE("thresholds at OBSS/PD_min behave exactly like legacy") {
  const SrConfig sr = sr_node(1, std::nullopt, kObssPdMinDbm, kObssPdMinDbm);
  RngStream rng(23, 0);
  for (int i = 0; i < 1000; ++i) {
    const double p = -100.0 + rng.uniform01() * 50.0;
    for (auto cls : {FrameClassification::kIntraBss, FrameClassification::kInterBssSrg,
                     FrameClassification::kInterBssNonSrg}) {
      CHECK(applicable_threshold(sr, cls, -82.0) == -82.0);
    }
    // the opportunity window [cca, obss_pd) is empty
    CHECK(detect_opportunity(p, -82.0, -82.0) != SrDetection::kOpportunity);
  }
}

}  // TEST_SUITE

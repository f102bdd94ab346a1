#include <cmath>

#include "doctest.h"
#include "srsim/phy.hpp"

using namespace srsim;

TEST_SUITE("phy") {

TEST_CASE("MCS selection follows the sensitivity ladder") {
  CHECK(select_mcs(-50.0)->index == 11);
  CHECK(select_mcs(-62.43)->index == 7);
  CHECK(select_mcs(-82.0)->index == 0);
  CHECK(select_mcs(-83.0) == nullptr);  // below MCS0: no usable link

  // monotone in rx power
  const McsEntry* prev = nullptr;
  for (double rx = -85.0; rx <= -40.0; rx += 0.25) {
    const McsEntry* cur = select_mcs(rx);
    if (prev != nullptr && cur != nullptr) CHECK(cur->index >= prev->index);
    if (cur != nullptr) prev = cur;
  }
}

TEST_CASE("data rates") {
  const auto table = default_mcs_table();
  CHECK(data_rate_bps(table[11]) == 121.875e6);  // 1950 bits per 16 us symbol
  CHECK(data_rate_bps(table[0]) == 7.3125e6);    // 117 bits per symbol
  for (std::size_t k = 1; k < table.size(); ++k) {
    CHECK(data_rate_bps(table[k]) > data_rate_bps(table[k - 1]));
    CHECK(table[k].min_sensitivity_dbm > table[k - 1].min_sensitivity_dbm);
  }
}

TEST_CASE("frame durations") {
  const auto table = default_mcs_table();
  // 64 * (320 + 12000) + 16 = 788496 bits / 1950 -> 405 symbols
  CHECK(frame_duration_us(FrameKind::kDataAmpdu, 64, &table[11]) == 6600.0);
  CHECK(frame_duration_us(FrameKind::kRts, 0, nullptr) == 52.0);
  CHECK(frame_duration_us(FrameKind::kCts, 0, nullptr) == 44.0);
  CHECK(frame_duration_us(FrameKind::kBlockAck, 0, nullptr) == 32.0);
  CHECK(frame_duration_us(FrameKind::kDataAmpdu, 1, &table[11]) == 232.0);

  // non-decreasing in aggregation size, non-increasing in data rate
  for (int n = 2; n <= 64; ++n) {
    CHECK(frame_duration_ns(FrameKind::kDataAmpdu, n, &table[11]) >=
          frame_duration_ns(FrameKind::kDataAmpdu, n - 1, &table[11]));
  }
  for (std::size_t k = 1; k < table.size(); ++k) {
    CHECK(frame_duration_ns(FrameKind::kDataAmpdu, 64, &table[k]) <=
          frame_duration_ns(FrameKind::kDataAmpdu, 64, &table[k - 1]));
  }

  CHECK_THROWS(frame_duration_ns(FrameKind::kDataAmpdu, 0, &table[11]));
  CHECK_THROWS(frame_duration_ns(FrameKind::kDataAmpdu, 65, &table[11]));
}

TEST_CASE("reception check") {
  CHECK(reception_check(-62.4, 32.6, -82.0, 10.0) == RxOutcome::kSuccess);
  CHECK(reception_check(-60.0, 9.986, -82.0, 10.0) == RxOutcome::kFailureCapture);
  CHECK(reception_check(-83.0, 50.0, -82.0, 10.0) == RxOutcome::kFailureCca);

  // monotone: raising rx power or SINR never breaks a success
  for (double rx = -82.0; rx <= -40.0; rx += 1.0) {
    for (double sinr = 10.0; sinr <= 40.0; sinr += 1.0) {
      CHECK(reception_check(rx, sinr, -82.0, 10.0) == RxOutcome::kSuccess);
    }
  }
}

}  // TEST_SUITE

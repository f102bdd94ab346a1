#include <cmath>
#include <vector>

#include "doctest.h"
#include "srsim/channel.hpp"
#include "srsim/rng.hpp"

using namespace srsim;

TEST_SUITE("channel") {

TEST_CASE("TMB path loss at the reference distances") {
  // Hand evaluation of L0 + 10*gamma*log10(d) + k*W*d with the defaults:
  //   d=1:   54.120 + 0        + 0.7701750 = 54.8901750
  //   d=10:  54.120 + 20.6067  + 7.7017500 = 82.4284500
  //   d=100: 54.120 + 41.2134  + 77.017500 = 172.350900
  CHECK(std::abs(path_loss_db(1.0) - 54.890) < 1e-3);
  CHECK(std::abs(path_loss_db(10.0) - 82.428) < 1e-3);
  CHECK(std::abs(path_loss_db(100.0) - 172.351) < 1e-3);
}

TEST_CASE("path loss clamps tiny distances instead of diverging") {
  CHECK(path_loss_db(0.05) == path_loss_db(0.1));
  CHECK(path_loss_db(0.0) == path_loss_db(0.1));
  CHECK(path_loss_db(-3.0) == path_loss_db(0.1));
}

TEST_CASE("path loss is strictly increasing in distance") {
  RngStream rng(11, 0);
  for (int i = 0; i < 2000; ++i) {
    const double a = 0.1 + rng.uniform01() * 200.0;
    const double b = a + 1e-3 + rng.uniform01() * 50.0;
    CHECK(path_loss_db(a) < path_loss_db(b));
  }
}

TEST_CASE("received power examples") {
  CHECK(std::abs(received_power_dbm(20.0, 10.0) - (-62.428)) < 1e-3);
  CHECK(std::abs(received_power_dbm(20.0, 1.0) - (-34.890)) < 1e-3);

  // with zero gains, rx == tx - PL exactly
  RngStream rng(12, 0);
  for (int i = 0; i < 1000; ++i) {
    const double p = 1.0 + rng.uniform01() * 19.0;
    const double d = 0.2 + rng.uniform01() * 100.0;
    CHECK(received_power_dbm(p, d) == p - path_loss_db(d));
  }
}

TEST_CASE("sinr examples") {
  CHECK(std::abs(sinr_db(-62.428, {}, -95.0) - 32.568) < 0.01);

  const std::vector<double> one{-70.0};
  const double s = sinr_db(-60.0, one, -95.0);
  CHECK(std::abs(s - 9.986) < 0.01);
  CHECK(s < 10.0);  // below the capture-effect threshold

  // equal signal and single interferer, vanishing noise -> ~0 dB
  CHECK(std::abs(sinr_db(-50.0, std::vector<double>{-50.0}, -400.0)) < 1e-9);
}

TEST_CASE("sinr monotonicity") {
  RngStream rng(13, 0);
  for (int i = 0; i < 1000; ++i) {
    const double sig = -90.0 + rng.uniform01() * 60.0;
    const double i1 = -100.0 + rng.uniform01() * 40.0;
    const std::vector<double> weak{i1};
    const std::vector<double> strong{i1 + 3.0};
    CHECK(sinr_db(sig, strong, -95.0) < sinr_db(sig, weak, -95.0));
    CHECK(sinr_db(sig + 1.0, weak, -95.0) > sinr_db(sig, weak, -95.0));
  }
}

TEST_CASE("dBm <-> mW round trip") {
  RngStream rng(14, 0);
  for (int i = 0; i < 100000; ++i) {
    const double dbm = -120.0 + rng.uniform01() * 150.0;
    CHECK(std::abs(mw_to_dbm(dbm_to_mw(dbm)) - dbm) < 1e-9);
  }
}

}  // TEST_SUITE

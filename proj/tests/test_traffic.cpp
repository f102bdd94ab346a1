#include <cmath>

#include "doctest.h"
#include "srsim/traffic.hpp"

using namespace srsim;

TEST_SUITE("traffic") {

TEST_CASE("inverse-CDF gap") {
  // u = 0.5 at lambda = 1000 pkt/s -> -ln(0.5)/1000 = 0.6931 ms
  CHECK(std::abs(arrival_gap_seconds(0.5, 12e6, 12000) - 6.931e-4) < 1e-7);
}

TEST_CASE("empirical mean gap at 12 Mbps is 1 ms within 1%") {
  RngStream rng(31, 0);
  const int n = 1000000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += next_arrival_gap(rng, 12e6, 12000);
  const double mean = sum / n;
  CHECK(std::abs(mean - 1e-3) < 1e-5);
}

TEST_CASE("doubling the load halves the mean gap") {
  RngStream a(32, 0), b(32, 0);
  const int n = 200000;
  double sa = 0.0, sb = 0.0;
  for (int i = 0; i < n; ++i) sa += next_arrival_gap(a, 25e6, 12000);
  for (int i = 0; i < n; ++i) sb += next_arrival_gap(b, 50e6, 12000);
  CHECK(std::abs(sa / sb - 2.0) < 0.02);
}

TEST_CASE("gap accumulation has no drift") {
  RngStream rng(33, 0);
  double last_arrival = 0.0;
  double gap_sum = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double g = next_arrival_gap(rng, 50e6, 12000);
    gap_sum += g;
    last_arrival += g;
  }
  CHECK(gap_sum == last_arrival);
}

TEST_CASE("arrival counts are Poisson-dispersed") {
  // index of dispersion of per-window counts, lambda*T = 1e4 per window
  RngStream rng(37, 0);
  const int runs = 100;
  const double horizon_s = 10.0;  // at 1000 pkt/s
  std::vector<double> counts;
  for (int r = 0; r < runs; ++r) {
    double t = 0.0;
    long c = 0;
    for (;;) {
      t += next_arrival_gap(rng, 12e6, 12000);
      if (t > horizon_s) break;
      ++c;
    }
    counts.push_back(static_cast<double>(c));
  }
  double mean = 0.0;
  for (double c : counts) mean += c;
  mean /= runs;
  double var = 0.0;
  for (double c : counts) var += (c - mean) * (c - mean);
  var /= runs - 1;
  CHECK(var / mean > 0.95);
  CHECK(var / mean < 1.05);
}

TEST_CASE("FIFO tail drop") {
  FifoQueue q(2);
  CHECK(q.enqueue({1, 12000, 10, 0}) == FifoQueue::Enqueue::kAccepted);
  CHECK(q.enqueue({2, 12000, 20, 0}) == FifoQueue::Enqueue::kAccepted);
  CHECK(q.enqueue({3, 12000, 30, 0}) == FifoQueue::Enqueue::kDropped);
  CHECK(q.drop_count() == 1);
  CHECK(q.size() == 2);
  CHECK(q.front().arrival_ns == 10);  // accepted packets keep their arrival time

  CHECK(q.enqueue({4, 12000, 40, 0}) == FifoQueue::Enqueue::kDropped);
  CHECK(q.drop_count() == 2);  // monotone non-decreasing
}

TEST_CASE("A-MPDU building peeks without dequeuing") {
  FifoQueue q(200);
  for (int i = 0; i < 100; ++i) q.enqueue({static_cast<std::uint64_t>(i), 12000, i, 5});
  auto a = q.build_ampdu(64);
  CHECK(a.size() == 64);
  CHECK(q.size() == 100);  // nothing removed before the BACK

  // a failed TXOP leaves the same head packets in place
  auto b = q.build_ampdu(64);
  REQUIRE(b.size() == a.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].id == b[i].id);

  FifoQueue small(200);
  for (int i = 0; i < 5; ++i) small.enqueue({static_cast<std::uint64_t>(i), 12000, i, 5});
  CHECK(small.build_ampdu(64).size() == 5);

  FifoQueue empty(4);
  CHECK_THROWS(empty.build_ampdu(64));
}

TEST_CASE("A-MPDU stops at a destination change") {
  FifoQueue q(16);
  q.enqueue({1, 12000, 0, 7});
  q.enqueue({2, 12000, 1, 7});
  q.enqueue({3, 12000, 2, 8});
  CHECK(q.build_ampdu(64).size() == 2);
}

}  // TEST_SUITE

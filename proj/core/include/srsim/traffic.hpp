#pragma once

#include <cstdint>
#include <deque>
#include <vector>

#include "srsim/phy.hpp"
#include "srsim/rng.hpp"

namespace srsim {

struct Packet {
  std::uint64_t id = 0;
  int size_bits = 12000;
  TimeNs arrival_ns = 0;
  int dest_node = -1;
};

// Exponential inter-arrival gap (seconds) via inverse CDF, -ln(u)/lambda,
// with lambda = load_bps / packet_bits packets per second.
double arrival_gap_seconds(double u_open01, double load_bps, int packet_bits);

double next_arrival_gap(RngStream& rng, double load_bps, int packet_bits);

// Tail-drop FIFO. Head packets are only removed on confirmed delivery, so a
// failed transmission leaves the A-MPDU contents in place for the retry.
class FifoQueue {
 public:
  explicit FifoQueue(std::size_t capacity = 100) : capacity_(capacity) {}

  enum class Enqueue { kAccepted, kDropped };

  Enqueue enqueue(const Packet& p);

  // Peeks up to n_max head packets sharing the head's destination.
  std::vector<Packet> build_ampdu(int n_max) const;

  void pop_front(std::size_t n);

  bool empty() const { return q_.empty(); }
  std::size_t size() const { return q_.size(); }
  std::size_t capacity() const { return capacity_; }
  std::uint64_t drop_count() const { return drop_count_; }
  const Packet& front() const { return q_.front(); }

 private:
  std::deque<Packet> q_;
  std::size_t capacity_;
  std::uint64_t drop_count_ = 0;
};

}  // namespace srsim

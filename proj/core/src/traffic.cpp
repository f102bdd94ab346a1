#include "srsim/traffic.hpp"

#include <cmath>
#include <stdexcept>

namespace srsim {

double arrival_gap_seconds(double u_open01, double load_bps, int packet_bits) {
  const double lambda = load_bps / static_cast<double>(packet_bits);
  return -std::log(u_open01) / lambda;
}

double next_arrival_gap(RngStream& rng, double load_bps, int packet_bits) {
  return arrival_gap_seconds(rng.uniform_open01(), load_bps, packet_bits);
}

FifoQueue::Enqueue FifoQueue::enqueue(const Packet& p) {
  if (q_.size() >= capacity_) {
    ++drop_count_;
    return Enqueue::kDropped;
  }
  q_.push_back(p);
  return Enqueue::kAccepted;
}

std::vector<Packet> FifoQueue::build_ampdu(int n_max) const {
  if (q_.empty()) throw std::logic_error("build_ampdu on an empty queue");
  std::vector<Packet> out;
  const int dest = q_.front().dest_node;
  for (const Packet& p : q_) {
    if (static_cast<int>(out.size()) >= n_max || p.dest_node != dest) break;
    out.push_back(p);
  }
  return out;
}

void FifoQueue::pop_front(std::size_t n) {
  q_.erase(q_.begin(), q_.begin() + static_cast<std::ptrdiff_t>(n));
}

}  // namespace srsim

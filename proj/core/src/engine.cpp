#include "srsim/engine.hpp"

#include <string>

namespace srsim {

const char* to_string(EventKind k) {
  switch (k) {
    case EventKind::kPacketArrival: return "PACKET_ARRIVAL";
    case EventKind::kSlotTick: return "SLOT_TICK";
    case EventKind::kFrameStart: return "FRAME_START";
    case EventKind::kFrameEnd: return "FRAME_END";
    case EventKind::kTimeout: return "TIMEOUT";
    case EventKind::kSimEnd: return "SIM_END";
  }
  return "?";
}

EventHandle EventQueue::schedule(TimeNs at, const Event& e) {
  if (at < now_)
    throw SimulationError("past-time scheduling: t=" + std::to_string(at) +
                          " ns < now=" + std::to_string(now_) + " ns, event " +
                          to_string(e.kind));
  const Key key{at, next_seq_++};
  q_.emplace(key, e);
  return EventHandle{key.at, key.seq};
}

void EventQueue::cancel(EventHandle& h) {
  if (h.valid()) q_.erase(Key{h.at, h.seq});
  h.invalidate();
}

std::optional<std::pair<TimeNs, Event>> EventQueue::pop() {
  if (q_.empty()) return std::nullopt;
  auto it = q_.begin();
  now_ = it->first.at;
  Event e = it->second;
  q_.erase(it);
  ++dispatched_;
  return std::make_pair(now_, e);
}

}  // namespace srsim

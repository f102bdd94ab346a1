#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>

#include "srsim/phy.hpp"

namespace srsim {

// Engine-level inconsistencies (past-time scheduling, malformed state
// transitions) abort the run with a diagnostic rather than limping on.
struct SimulationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class EventKind {
  kPacketArrival,
  kSlotTick,
  kFrameStart,
  kFrameEnd,
  kTimeout,
  kSimEnd,
};

const char* to_string(EventKind k);

struct Event {
  EventKind kind = EventKind::kSimEnd;
  int node_id = -1;
  std::uint64_t frame_id = 0;
  int token = 0;  // distinguishes timeout flavors
};

struct EventHandle {
  TimeNs at = -1;
  std::uint64_t seq = 0;
  bool valid() const { return at >= 0; }
  void invalidate() { at = -1; }
};

// Priority queue keyed by (fire_time, insertion_seq); the seq tie-break makes
// the total event order a pure function of the schedule calls.
class EventQueue {
 public:
  EventHandle schedule(TimeNs at, const Event& e);

  // Removes exactly the identified event; invalid handles are ignored.
  void cancel(EventHandle& h);

  bool empty() const { return q_.empty(); }
  std::size_t size() const { return q_.size(); }
  TimeNs now() const { return now_; }
  std::uint64_t dispatched() const { return dispatched_; }

  // Pops the globally minimal event and advances the clock.
  std::optional<std::pair<TimeNs, Event>> pop();

  // Dispatches in key order until the queue empties, the next event lies
  // beyond t_end, or the dispatcher returns false. Returns the final clock.
  template <typename Dispatcher>
  TimeNs run_until(TimeNs t_end, Dispatcher&& dispatch) {
    while (!q_.empty() && q_.begin()->first.at <= t_end) {
      auto popped = pop();
      if (!dispatch(popped->first, popped->second)) break;
    }
    return now_;
  }

 private:
  struct Key {
    TimeNs at;
    std::uint64_t seq;
    bool operator<(const Key& o) const {
      return at != o.at ? at < o.at : seq < o.seq;
    }
  };

  std::map<Key, Event> q_;
  std::uint64_t next_seq_ = 0;
  std::uint64_t dispatched_ = 0;
  TimeNs now_ = 0;
};

}  // namespace srsim

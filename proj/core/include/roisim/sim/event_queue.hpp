#pragma once

#include <cstdint>
#include <functional>
#include <queue>
#include <vector>

#include "roisim/sim/time.hpp"

namespace roisim {

// Deterministic discrete-event engine. Events pop in (fire_at, sequence_no)
// order; the sequence number is assigned at schedule time, so simultaneous
// events dispatch in insertion order. Single-threaded per run.
class EventQueue {
 public:
  using Handler = std::function<void()>;

  SimTime now() const { return clock_; }
  std::size_t pending_count() const { return heap_.size(); }
  std::uint64_t dispatched_count() const { return dispatched_; }

  // Scheduling in the past is a contract violation.
  void schedule(SimTime fire_at, Handler handler);

  // Convenience: relative scheduling.
  void schedule_in(SimTime delay, Handler handler) { schedule(clock_ + delay, handler); }

  // Dispatches every event with fire_at <= end, including events scheduled
  // re-entrantly by handlers, then leaves the clock at end.
  SimTime run_until(SimTime end);

 private:
  struct Entry {
    SimTime fire_at;
    std::uint64_t seq;
    Handler handler;
  };
  struct Later {
    bool operator()(const Entry& a, const Entry& b) const {
      if (a.fire_at != b.fire_at) return a.fire_at > b.fire_at;
      return a.seq > b.seq;
    }
  };

  SimTime clock_ = 0;
  std::uint64_t next_seq_ = 0;
  std::uint64_t dispatched_ = 0;
  std::priority_queue<Entry, std::vector<Entry>, Later> heap_;
};

}  // namespace roisim

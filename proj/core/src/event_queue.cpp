#include "roisim/sim/event_queue.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace roisim {

void EventQueue::schedule(SimTime fire_at, Handler handler) {
  if (fire_at < clock_) {
    throw std::logic_error("EventQueue::schedule: fire_at " + std::to_string(fire_at) +
                           " us is in the past (clock " + std::to_string(clock_) + " us)");
  }
  heap_.push(Entry{fire_at, next_seq_++, std::move(handler)});
}

SimTime EventQueue::run_until(SimTime end) {
  while (!heap_.empty() && heap_.top().fire_at <= end) {
    // Copy out before pop: the handler may schedule new events.
    Entry e = heap_.top();
    heap_.pop();
    clock_ = e.fire_at;
    ++dispatched_;
    e.handler();
  }
  if (end > clock_) clock_ = end;
  return clock_;
}

}  // namespace roisim

#include <doctest.h>

#include <stdexcept>
#include <vector>

#include "roisim/sim/event_queue.hpp"

using roisim::EventQueue;
using roisim::SimTime;

TEST_CASE("events pop in fire-time order") {
  EventQueue q;
  std::vector<SimTime> fired;
  q.schedule(5, [&] { fired.push_back(5); });
  q.schedule(3, [&] { fired.push_back(3); });
  q.run_until(10);
  CHECK(fired == std::vector<SimTime>{3, 5});
}

TEST_CASE("simultaneous events tie-break by insertion order") {
  EventQueue q;
  std::vector<int> fired;
  q.schedule(7, [&] { fired.push_back(1); });
  q.schedule(7, [&] { fired.push_back(2); });
  q.run_until(7);
  CHECK(fired == std::vector<int>{1, 2});
}

TEST_CASE("scheduling in the past is rejected with both times named") {
  EventQueue q;
  q.schedule(4, [] {});
  q.run_until(4);
  try {
    q.schedule(2, [] {});
    FAIL("expected logic_error");
  } catch (const std::logic_error& e) {
    const std::string msg = e.what();
    CHECK(msg.find("2") != std::string::npos);
    CHECK(msg.find("4") != std::string::npos);
  }
}

TEST_CASE("run_until on an empty queue advances the clock with zero dispatches") {
  EventQueue q;
  CHECK(q.run_until(10) == 10);
  CHECK(q.dispatched_count() == 0);
}

TEST_CASE("run_until dispatches only events at or before the horizon") {
  EventQueue q;
  std::vector<SimTime> fired;
  for (const SimTime t : {3, 7, 12}) {
    q.schedule(t, [&fired, t] { fired.push_back(t); });
  }
  q.run_until(10);
  CHECK(fired == std::vector<SimTime>{3, 7});
  CHECK(q.pending_count() == 1);
  q.run_until(12);
  CHECK(fired == std::vector<SimTime>{3, 7, 12});
}

TEST_CASE("re-entrant scheduling during dispatch runs within the same horizon") {
  EventQueue q;
  std::vector<SimTime> fired;
  q.schedule(3, [&] {
    fired.push_back(3);
    q.schedule(4, [&] { fired.push_back(4); });
  });
  q.run_until(10);
  CHECK(fired == std::vector<SimTime>{3, 4});
}

TEST_CASE("clock never runs ahead of a pending earlier event") {
  EventQueue q;
  SimTime seen_at = -1;
  q.schedule(6, [&] { seen_at = q.now(); });
  q.schedule(2, [&] { CHECK(q.now() == 2); });
  q.run_until(100);
  CHECK(seen_at == 6);
  CHECK(q.now() == 100);
}

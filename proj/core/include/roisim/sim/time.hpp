#pragma once

#include <cstdint>

namespace roisim {

// Simulation time in integer microseconds. Integer ticks keep event
// ordering exact; 13 us MAC slots and 33333 us frame intervals are both
// representable without drift.
using SimTime = std::int64_t;

constexpr SimTime kMicrosPerSecond = 1'000'000;

constexpr SimTime seconds_to_us(double s) {
  return static_cast<SimTime>(s * static_cast<double>(kMicrosPerSecond) + 0.5);
}

constexpr double us_to_seconds(SimTime t) {
  return static_cast<double>(t) / static_cast<double>(kMicrosPerSecond);
}

}  // namespace roisim

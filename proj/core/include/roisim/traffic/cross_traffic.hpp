#pragma once

#include <cstdint>

#include "roisim/mac/edca.hpp"
#include "roisim/sim/event_queue.hpp"
#include "roisim/sim/rng.hpp"
#include "roisim/types.hpp"

namespace roisim {

// Constant-bitrate competing source feeding one AC directly, bypassing the
// video mapper. Mean emission interval is 8*size/rate with uniform jitter of
// +/- jitter_fraction around it.
struct CrossTrafficConfig {
  AcIndex target_ac = AcIndex::AC3_Voice;
  std::int32_t packet_size_bytes = 200;
  double rate_bps = 64'000.0;
  double jitter_fraction = 0.0;  // in [0, 1)

  void validate() const;
  double mean_interval_us() const {
    return 8.0 * static_cast<double>(packet_size_bytes) * 1'000'000.0 / rate_bps;
  }
};

class CrossTrafficSource {
 public:
  // Emission starts at one (jittered) interval after t=0 and repeats until
  // the engine stops dispatching. Packet ids come from the shared counter.
  CrossTrafficSource(EventQueue& engine, EdcaMac& mac, CrossTrafficConfig config,
                     RngStream jitter_rng, std::uint64_t* next_packet_id);

  void start();

  std::uint64_t emitted() const { return emitted_; }

 private:
  SimTime next_interval();
  void on_tick();

  EventQueue& engine_;
  EdcaMac& mac_;
  CrossTrafficConfig config_;
  RngStream rng_;
  std::uint64_t* next_packet_id_;
  std::uint64_t emitted_ = 0;
};

}  // namespace roisim

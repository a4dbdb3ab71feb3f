#include "roisim/traffic/cross_traffic.hpp"

#include <cmath>
#include <stdexcept>

namespace roisim {

void CrossTrafficConfig::validate() const {
  if (rate_bps <= 0.0) throw std::invalid_argument("cross traffic: rate_bps must be > 0");
  if (packet_size_bytes <= 0) {
    throw std::invalid_argument("cross traffic: packet_size_bytes must be > 0");
  }
  if (jitter_fraction < 0.0 || jitter_fraction >= 1.0) {
    throw std::invalid_argument("cross traffic: jitter_fraction must be in [0,1)");
  }
}

CrossTrafficSource::CrossTrafficSource(EventQueue& engine, EdcaMac& mac, CrossTrafficConfig config,
                                       RngStream jitter_rng, std::uint64_t* next_packet_id)
    : engine_(engine),
      mac_(mac),
      config_(config),
      rng_(std::move(jitter_rng)),
      next_packet_id_(next_packet_id) {
  config_.validate();
}

SimTime CrossTrafficSource::next_interval() {
  const double mean = config_.mean_interval_us();
  // Uniform in mean * (1 +/- jitter). One draw per tick even at jitter 0,
  // so turning jitter on or off does not shift later draws.
  const double u = rng_.uniform01() * 2.0 - 1.0;
  const double interval = mean * (1.0 + config_.jitter_fraction * u);
  return std::max<SimTime>(1, static_cast<SimTime>(std::llround(interval)));
}

void CrossTrafficSource::start() {
  engine_.schedule_in(next_interval(), [this] { on_tick(); });
}

void CrossTrafficSource::on_tick() {
  MacPacket p;
  p.id = (*next_packet_id_)++;
  p.size_bytes = config_.packet_size_bytes;
  p.created_at = engine_.now();
  mac_.enqueue(std::move(p), config_.target_ac);
  ++emitted_;
  engine_.schedule_in(next_interval(), [this] { on_tick(); });
}

}  // namespace roisim

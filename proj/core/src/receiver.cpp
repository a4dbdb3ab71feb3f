#include "roisim/metrics/receiver.hpp"

#include <stdexcept>
#include <string>

namespace roisim {

FrameAssembler::FrameAssembler(const VideoTrace& trace, std::int32_t mtu)
    : frame_count_(trace.frame_count()) {
  statuses_.reserve(trace.entries.size());
  for (const auto& e : trace.entries) {
    RegionFrameStatus s;
    s.frame_index = e.frame_index;
    s.region = e.region;
    const auto fragments = static_cast<std::size_t>((e.size_bytes + mtu - 1) / mtu);
    s.received_fragments.assign(fragments, false);
    statuses_.push_back(std::move(s));
  }
}

RegionFrameStatus& FrameAssembler::status_mut(std::int32_t frame_index, Region region) {
  if (frame_index < 0 || frame_index >= frame_count_) {
    throw std::runtime_error("arrival for frame " + std::to_string(frame_index) +
                             " outside the trace (corrupt log)");
  }
  return statuses_[2 * static_cast<std::size_t>(frame_index) + (region == Region::ROI ? 0 : 1)];
}

const RegionFrameStatus& FrameAssembler::status(std::int32_t frame_index, Region region) const {
  return const_cast<FrameAssembler*>(this)->status_mut(frame_index, region);
}

void FrameAssembler::record_arrival(const VideoPacket& packet) {
  auto& s = status_mut(packet.frame_index, packet.region);
  if (packet.fragment_index < 0 ||
      packet.fragment_index >= static_cast<std::int32_t>(s.received_fragments.size())) {
    throw std::runtime_error("fragment index " + std::to_string(packet.fragment_index) +
                             " out of range for frame " + std::to_string(packet.frame_index) +
                             " (corrupt log)");
  }
  if (s.received_fragments[static_cast<std::size_t>(packet.fragment_index)]) return;
  s.received_fragments[static_cast<std::size_t>(packet.fragment_index)] = true;
  ++s.received_count;
  ++s.received_packets;
}

std::int64_t FrameAssembler::received_packet_count(Region region) const {
  std::int64_t sum = 0;
  for (const auto& s : statuses_) {
    if (s.region == region) sum += s.received_packets;
  }
  return sum;
}

}  // namespace roisim

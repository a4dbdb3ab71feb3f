#include "roisim/traffic/packetizer.hpp"

#include <cmath>
#include <stdexcept>

namespace roisim {

std::vector<VideoPacket> packetize_frame(const VideoTraceEntry& entry, std::int32_t mtu,
                                         SimTime clock, std::uint64_t* next_packet_id) {
  if (mtu <= 0) throw std::invalid_argument("packetize_frame: mtu must be > 0");
  const auto fragments = static_cast<std::int32_t>((entry.size_bytes + mtu - 1) / mtu);
  std::vector<VideoPacket> out;
  out.reserve(static_cast<std::size_t>(fragments));
  std::int64_t remaining = entry.size_bytes;
  for (std::int32_t i = 0; i < fragments; ++i) {
    VideoPacket p;
    p.packet_id = (*next_packet_id)++;
    p.frame_index = entry.frame_index;
    p.region = entry.region;
    p.fragment_index = i;
    p.fragment_count = fragments;
    p.size_bytes = static_cast<std::int32_t>(std::min<std::int64_t>(mtu, remaining));
    p.created_at = clock;
    remaining -= p.size_bytes;
    out.push_back(p);
  }
  return out;
}

std::vector<SimTime> frame_release_schedule(double fps, std::int32_t frames) {
  if (fps <= 0.0) throw std::invalid_argument("frame_release_schedule: fps must be > 0");
  std::vector<SimTime> out;
  out.reserve(static_cast<std::size_t>(frames));
  for (std::int32_t i = 0; i < frames; ++i) {
    out.push_back(static_cast<SimTime>(
        std::llround(static_cast<double>(i) * 1'000'000.0 / fps)));
  }
  return out;
}

std::int64_t expected_packet_count(const VideoTrace& trace, std::int32_t mtu, Region region) {
  std::int64_t count = 0;
  for (const auto& e : trace.entries) {
    if (e.region == region) count += (e.size_bytes + mtu - 1) / mtu;
  }
  return count;
}

}  // namespace roisim

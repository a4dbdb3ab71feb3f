#pragma once

#include <cstdint>
#include <vector>

#include "roisim/sim/time.hpp"
#include "roisim/traffic/video_packet.hpp"
#include "roisim/traffic/video_trace.hpp"

namespace roisim {

// Fragments one region-frame into ceil(size/mtu) packets; all fragments
// carry mtu bytes except the last, and their sizes sum to the exact frame
// size. packet ids are assigned from *next_packet_id, which advances.
std::vector<VideoPacket> packetize_frame(const VideoTraceEntry& entry, std::int32_t mtu,
                                         SimTime clock, std::uint64_t* next_packet_id);

// Release instants: frame i at round(i * 1e6 / fps) microseconds. Both
// region-frames of an index release together.
std::vector<SimTime> frame_release_schedule(double fps, std::int32_t frames);

// ceil(size/mtu) summed over all entries.
std::int64_t expected_packet_count(const VideoTrace& trace, std::int32_t mtu, Region region);

}  // namespace roisim

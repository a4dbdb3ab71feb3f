#pragma once

#include <cstdint>
#include <vector>

#include "roisim/traffic/video_packet.hpp"
#include "roisim/traffic/video_trace.hpp"

namespace roisim {

// Receive-side view of one region-frame. A region-frame is decodable only
// when every fragment arrived (All-Intra tiles, no partial-slice recovery).
struct RegionFrameStatus {
  std::int32_t frame_index = 0;
  Region region = Region::ROI;
  std::vector<bool> received_fragments;
  std::int32_t received_count = 0;
  std::int64_t received_packets = 0;  // distinct fragments, duplicates ignored

  bool decodable() const {
    return received_count == static_cast<std::int32_t>(received_fragments.size()) &&
           !received_fragments.empty();
  }
};

// Collects delivered video packets into per-(frame, region) fragment maps.
class FrameAssembler {
 public:
  explicit FrameAssembler(const VideoTrace& trace, std::int32_t mtu);

  // Duplicate deliveries are idempotent. Throws on a packet that does not
  // belong to the trace (corrupt log).
  void record_arrival(const VideoPacket& packet);

  const RegionFrameStatus& status(std::int32_t frame_index, Region region) const;
  const std::vector<RegionFrameStatus>& statuses() const { return statuses_; }

  std::int64_t received_packet_count(Region region) const;

 private:
  RegionFrameStatus& status_mut(std::int32_t frame_index, Region region);

  std::int32_t frame_count_;
  std::vector<RegionFrameStatus> statuses_;  // 2 per frame, ROI first
};

}  // namespace roisim

#pragma once

#include <cstdint>

#include "roisim/sim/time.hpp"
#include "roisim/types.hpp"

namespace roisim {

// One MTU-bounded fragment of a region-frame. Fragments of a region-frame
// sum to its exact byte size; fragment_index < fragment_count.
struct VideoPacket {
  std::uint64_t packet_id = 0;
  std::int32_t frame_index = 0;
  Region region = Region::ROI;
  std::int32_t fragment_index = 0;
  std::int32_t fragment_count = 0;
  std::int32_t size_bytes = 0;
  SimTime created_at = 0;
};

}  // namespace roisim

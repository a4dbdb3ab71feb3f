#pragma once

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "roisim/types.hpp"

namespace roisim {

// One encoded region-frame of the trace, the stand-in for real encoder
// output. enc_mse is the distortion of the correctly decoded region against
// the source (8-bit pixel scale); motion_mse is the extra distortion added
// per frame of freeze when this frame is concealed by copying an earlier one.
struct VideoTraceEntry {
  std::int32_t frame_index = 0;
  Region region = Region::ROI;
  std::int64_t size_bytes = 0;
  double enc_mse = 0.0;
  double motion_mse = 0.0;
  std::int64_t pixel_count = 0;
};

struct VideoTrace {
  std::vector<VideoTraceEntry> entries;  // sorted by (frame_index, region), ROI first

  std::int32_t frame_count() const { return static_cast<std::int32_t>(entries.size() / 2); }
  const VideoTraceEntry& at(std::int32_t frame_index, Region region) const;
  std::int64_t total_bytes(Region region) const;
};

// CSV format: header frame_index,region,size_bytes,enc_mse,motion_mse,pixel_count
// with region in {ROI, NONROI}; '#' starts a comment line. Validates that
// every frame has exactly one entry per region, positive sizes and pixel
// counts, and a pixel split constant across frames. Throws std::runtime_error
// naming the offending line or frame.
VideoTrace load_video_trace(const std::filesystem::path& path);

void write_video_trace(const VideoTrace& trace, std::ostream& out);
void write_video_trace(const VideoTrace& trace, const std::filesystem::path& path);

// Knobs of the synthetic reference trace. Per-frame fragment counts are drawn
// first and adjusted to hit the packet totals exactly, so the packet counts
// of the bundled trace are fixed by construction. Quality values are drawn
// uniformly around the encoding PSNR targets; motion cost is drawn higher for
// the ROI, which carries most of the scene movement.
struct TraceGenConfig {
  std::uint64_t seed = 7;
  std::int32_t frames = 300;
  std::int32_t mtu = 1024;
  std::int64_t roi_packet_total = 1201;
  std::int64_t nonroi_packet_total = 2993;
  std::int64_t frame_pixels = 1280LL * 720;
  double roi_pixel_fraction = 0.25;
  double roi_psnr_db = 35.3;
  double nonroi_psnr_db = 30.4;
  double psnr_spread_db = 1.2;  // uniform half-width around the target
  double roi_motion_mse_min = 2000.0;
  double roi_motion_mse_max = 3000.0;
  double nonroi_motion_mse_min = 40.0;
  double nonroi_motion_mse_max = 80.0;
};

VideoTrace generate_reference_trace(const TraceGenConfig& config);

}  // namespace roisim

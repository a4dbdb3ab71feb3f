#pragma once

#include <cstdint>
#include <vector>

#include "roisim/metrics/receiver.hpp"
#include "roisim/traffic/video_trace.hpp"

namespace roisim {

// Frame-copy concealment knobs. A region-frame with no decodable
// predecessor falls back to blank_mse (a flat mid-gray proxy); a lossless
// frame with mse 0 reports psnr_ceiling_db.
struct ConcealmentConfig {
  double blank_mse = 65025.0;
  double psnr_ceiling_db = 100.0;
};

struct FrameQuality {
  std::int32_t frame_index = 0;
  double mse_roi = 0.0;
  double mse_nonroi = 0.0;
  double psnr_roi = 0.0;
  double psnr_nonroi = 0.0;
  double psnr_combined = 0.0;
  // Index of the region-frame actually displayed; -1 before the first
  // decodable frame of the region.
  std::int32_t displayed_from_roi = -1;
  std::int32_t displayed_from_nonroi = -1;
};

// 10*log10(255^2 / mse); mse <= 0 maps to the configured ceiling.
double frame_psnr(double mse, double psnr_ceiling_db = 100.0);

// Applies per-region frame-copy concealment over the whole sequence:
// decodable frame i shows itself at enc_mse(i); a lost frame i displayed
// from the last decodable j accumulates enc_mse(j) + sum of motion_mse over
// (j, i]. Combined distortion is the pixel-weighted mean of the region MSEs,
// computed per frame, never by averaging dB values.
std::vector<FrameQuality> conceal_sequence(const std::vector<RegionFrameStatus>& statuses,
                                           const VideoTrace& trace,
                                           const ConcealmentConfig& config = {});

}  // namespace roisim

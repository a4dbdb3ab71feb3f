#include "roisim/metrics/quality.hpp"

#include <cmath>
#include <stdexcept>

namespace roisim {

double frame_psnr(double mse, double psnr_ceiling_db) {
  if (mse <= 0.0) return psnr_ceiling_db;
  return 10.0 * std::log10(65025.0 / mse);
}

std::vector<FrameQuality> conceal_sequence(const std::vector<RegionFrameStatus>& statuses,
                                           const VideoTrace& trace,
                                           const ConcealmentConfig& config) {
  const auto frames = trace.frame_count();
  if (statuses.size() != trace.entries.size()) {
    throw std::invalid_argument("conceal_sequence: statuses must cover every trace entry");
  }

  std::vector<FrameQuality> out(static_cast<std::size_t>(frames));

  // Regions conceal independently: the ROI tiles decode regardless of
  // non-ROI losses and vice versa.
  for (const Region region : {Region::ROI, Region::NonROI}) {
    std::int32_t last_decodable = -1;
    double accumulated_motion = 0.0;
    for (std::int32_t f = 0; f < frames; ++f) {
      const auto& status =
          statuses[2 * static_cast<std::size_t>(f) + (region == Region::ROI ? 0 : 1)];
      if (status.frame_index != f || status.region != region) {
        throw std::invalid_argument("conceal_sequence: statuses out of order at frame " +
                                    std::to_string(f));
      }
      const auto& entry = trace.at(f, region);
      double mse;
      std::int32_t displayed_from;
      if (status.decodable()) {
        last_decodable = f;
        accumulated_motion = 0.0;
        mse = entry.enc_mse;
        displayed_from = f;
      } else if (last_decodable >= 0) {
        accumulated_motion += entry.motion_mse;
        mse = trace.at(last_decodable, region).enc_mse + accumulated_motion;
        displayed_from = last_decodable;
      } else {
        mse = config.blank_mse;
        displayed_from = -1;
      }
      auto& q = out[static_cast<std::size_t>(f)];
      q.frame_index = f;
      if (region == Region::ROI) {
        q.mse_roi = mse;
        q.psnr_roi = frame_psnr(mse, config.psnr_ceiling_db);
        q.displayed_from_roi = displayed_from;
      } else {
        q.mse_nonroi = mse;
        q.psnr_nonroi = frame_psnr(mse, config.psnr_ceiling_db);
        q.displayed_from_nonroi = displayed_from;
      }
    }
  }

  const double roi_px = static_cast<double>(trace.entries[0].pixel_count);
  const double nonroi_px = static_cast<double>(trace.entries[1].pixel_count);
  for (auto& q : out) {
    const double combined_mse =
        (roi_px * q.mse_roi + nonroi_px * q.mse_nonroi) / (roi_px + nonroi_px);
    q.psnr_combined = frame_psnr(combined_mse, config.psnr_ceiling_db);
  }
  return out;
}

}  // namespace roisim

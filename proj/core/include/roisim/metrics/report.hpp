#pragma once

#include <cstdint>
#include <vector>

#include "roisim/mac/edca.hpp"
#include "roisim/metrics/quality.hpp"
#include "roisim/metrics/receiver.hpp"
#include "roisim/traffic/video_trace.hpp"

namespace roisim {

struct RegionCounts {
  std::int64_t packets_sent = 0;
  std::int64_t packets_received = 0;

  double pdr() const {
    return packets_sent == 0 ? 0.0
                             : static_cast<double>(packets_received) /
                                   static_cast<double>(packets_sent);
  }
};

// Per-run aggregate mirroring the packet-count and PSNR comparison tables.
// Mean PSNRs are arithmetic means of per-frame dB values (the Evalvid
// convention); encoding-side references come from replaying the quality pass
// with every frame decodable.
struct MetricsReport {
  RegionCounts roi;
  RegionCounts nonroi;
  RegionCounts total;

  double recv_psnr_roi = 0.0;
  double recv_psnr_nonroi = 0.0;
  double recv_psnr_combined = 0.0;
  double enc_psnr_roi = 0.0;
  double enc_psnr_nonroi = 0.0;
  double enc_psnr_combined = 0.0;
};

// Builds the report and cross-checks the receiver's packet counts against
// the MAC log (delivered video packets per region must match exactly; a
// mismatch is an internal-consistency error).
MetricsReport summarize(const FrameAssembler& assembler, const std::vector<FrameQuality>& received,
                        const std::vector<FrameQuality>& encoding, const VideoTrace& trace,
                        std::int32_t mtu, const MacStats& mac_stats,
                        std::int64_t video_delivered_roi, std::int64_t video_delivered_nonroi);

// Quality pass with every region-frame decodable: the encoding-side
// reference shares the received-side code path, so a lossless run matches it
// bit-exactly.
std::vector<FrameQuality> encoding_reference(const VideoTrace& trace,
                                             const ConcealmentConfig& config = {});

double mean_psnr_roi(const std::vector<FrameQuality>& qualities);
double mean_psnr_nonroi(const std::vector<FrameQuality>& qualities);
double mean_psnr_combined(const std::vector<FrameQuality>& qualities);

}  // namespace roisim

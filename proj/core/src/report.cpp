#include "roisim/metrics/report.hpp"

#include <stdexcept>
#include <string>

#include "roisim/traffic/packetizer.hpp"

namespace roisim {

namespace {
double mean_of(const std::vector<FrameQuality>& qs, double FrameQuality::*field) {
  if (qs.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& q : qs) sum += q.*field;
  return sum / static_cast<double>(qs.size());
}
}  // namespace

double mean_psnr_roi(const std::vector<FrameQuality>& qs) {
  return mean_of(qs, &FrameQuality::psnr_roi);
}
double mean_psnr_nonroi(const std::vector<FrameQuality>& qs) {
  return mean_of(qs, &FrameQuality::psnr_nonroi);
}
double mean_psnr_combined(const std::vector<FrameQuality>& qs) {
  return mean_of(qs, &FrameQuality::psnr_combined);
}

std::vector<FrameQuality> encoding_reference(const VideoTrace& trace,
                                             const ConcealmentConfig& config) {
  std::vector<RegionFrameStatus> all_received;
  all_received.reserve(trace.entries.size());
  for (const auto& e : trace.entries) {
    RegionFrameStatus s;
    s.frame_index = e.frame_index;
    s.region = e.region;
    s.received_fragments.assign(1, true);
    s.received_count = 1;
    all_received.push_back(std::move(s));
  }
  return conceal_sequence(all_received, trace, config);
}

MetricsReport summarize(const FrameAssembler& assembler, const std::vector<FrameQuality>& received,
                        const std::vector<FrameQuality>& encoding, const VideoTrace& trace,
                        std::int32_t mtu, const MacStats& mac_stats,
                        std::int64_t video_delivered_roi, std::int64_t video_delivered_nonroi) {
  MetricsReport r;
  r.roi.packets_sent = expected_packet_count(trace, mtu, Region::ROI);
  r.nonroi.packets_sent = expected_packet_count(trace, mtu, Region::NonROI);
  r.roi.packets_received = assembler.received_packet_count(Region::ROI);
  r.nonroi.packets_received = assembler.received_packet_count(Region::NonROI);
  r.total.packets_sent = r.roi.packets_sent + r.nonroi.packets_sent;
  r.total.packets_received = r.roi.packets_received + r.nonroi.packets_received;

  if (r.roi.packets_received != video_delivered_roi ||
      r.nonroi.packets_received != video_delivered_nonroi) {
    throw std::logic_error(
        "metrics/MAC count mismatch: receiver saw " + std::to_string(r.roi.packets_received) +
        "/" + std::to_string(r.nonroi.packets_received) + " (ROI/non-ROI), MAC delivered " +
        std::to_string(video_delivered_roi) + "/" + std::to_string(video_delivered_nonroi));
  }
  const std::uint64_t mac_success = mac_stats.of(AcIndex::AC0_Background).tx_success +
                                    mac_stats.of(AcIndex::AC1_BestEffort).tx_success +
                                    mac_stats.of(AcIndex::AC2_Video).tx_success +
                                    mac_stats.of(AcIndex::AC3_Voice).tx_success;
  if (static_cast<std::uint64_t>(r.total.packets_received) > mac_success) {
    throw std::logic_error("metrics/MAC count mismatch: more video packets received than the MAC "
                           "delivered in total");
  }

  r.recv_psnr_roi = mean_psnr_roi(received);
  r.recv_psnr_nonroi = mean_psnr_nonroi(received);
  r.recv_psnr_combined = mean_psnr_combined(received);
  r.enc_psnr_roi = mean_psnr_roi(encoding);
  r.enc_psnr_nonroi = mean_psnr_nonroi(encoding);
  r.enc_psnr_combined = mean_psnr_combined(encoding);
  return r;
}

}  // namespace roisim

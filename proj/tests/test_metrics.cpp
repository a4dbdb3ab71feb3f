#include <doctest.h>

#include <array>
#include <cmath>

#include "roisim/metrics/quality.hpp"
#include "roisim/metrics/receiver.hpp"
#include "roisim/metrics/report.hpp"
#include "roisim/traffic/packetizer.hpp"
#include "roisim/traffic/video_trace.hpp"

using namespace roisim;

namespace {

// Small hand-built trace: 4 frames, ROI 3000 B (3 fragments at mtu 1024),
// non-ROI 1500 B (2 fragments).
VideoTrace small_trace() {
  VideoTrace t;
  for (std::int32_t f = 0; f < 4; ++f) {
    VideoTraceEntry roi;
    roi.frame_index = f;
    roi.region = Region::ROI;
    roi.size_bytes = 3000;
    roi.enc_mse = 20.0;
    roi.motion_mse = 50.0;
    roi.pixel_count = 100;
    VideoTraceEntry nonroi = roi;
    nonroi.region = Region::NonROI;
    nonroi.size_bytes = 1500;
    nonroi.enc_mse = 40.0;
    nonroi.motion_mse = 10.0;
    nonroi.pixel_count = 300;
    t.entries.push_back(roi);
    t.entries.push_back(nonroi);
  }
  return t;
}

void deliver_frame(FrameAssembler& fa, const VideoTrace& trace, std::int32_t frame, Region region,
                   std::int32_t mtu = 1024) {
  std::uint64_t id = 1000;
  for (const auto& p : packetize_frame(trace.at(frame, region), mtu, 0, &id)) {
    fa.record_arrival(p);
  }
}

}  // namespace

TEST_CASE("frame psnr identities") {
  CHECK(frame_psnr(65025.0) == doctest::Approx(0.0));
  CHECK(frame_psnr(650.25) == doctest::Approx(20.0));
  CHECK(frame_psnr(21.13) == doctest::Approx(34.88).epsilon(0.0005));
  CHECK(frame_psnr(0.0) == doctest::Approx(100.0));
  CHECK(frame_psnr(0.0, 60.0) == doctest::Approx(60.0));
}

TEST_CASE("a region-frame is decodable only when every fragment arrived") {
  const auto trace = small_trace();
  FrameAssembler fa(trace, 1024);
  std::uint64_t id = 0;
  const auto pkts = packetize_frame(trace.at(0, Region::ROI), 1024, 0, &id);
  REQUIRE(pkts.size() == 3);

  fa.record_arrival(pkts[0]);
  fa.record_arrival(pkts[2]);
  CHECK_FALSE(fa.status(0, Region::ROI).decodable());

  fa.record_arrival(pkts[1]);
  CHECK(fa.status(0, Region::ROI).decodable());

  // Duplicate delivery is idempotent.
  fa.record_arrival(pkts[1]);
  CHECK(fa.status(0, Region::ROI).received_packets == 3);
  CHECK(fa.received_packet_count(Region::ROI) == 3);
}

TEST_CASE("arrivals outside the trace are a corrupt-log error") {
  const auto trace = small_trace();
  FrameAssembler fa(trace, 1024);
  VideoPacket p;
  p.frame_index = 99;
  p.region = Region::ROI;
  p.fragment_index = 0;
  p.fragment_count = 1;
  CHECK_THROWS(fa.record_arrival(p));
}

TEST_CASE("all frames decodable reproduces the encoding distortion exactly") {
  const auto trace = small_trace();
  FrameAssembler fa(trace, 1024);
  for (std::int32_t f = 0; f < 4; ++f) {
    deliver_frame(fa, trace, f, Region::ROI);
    deliver_frame(fa, trace, f, Region::NonROI);
  }
  const auto qs = conceal_sequence(fa.statuses(), trace);
  const auto ref = encoding_reference(trace);
  REQUIRE(qs.size() == 4);
  for (std::size_t i = 0; i < qs.size(); ++i) {
    CHECK(qs[i].mse_roi == 20.0);
    CHECK(qs[i].psnr_roi == ref[i].psnr_roi);
    CHECK(qs[i].psnr_nonroi == ref[i].psnr_nonroi);
    CHECK(qs[i].psnr_combined == ref[i].psnr_combined);
    CHECK(qs[i].displayed_from_roi == static_cast<std::int32_t>(i));
  }
}

TEST_CASE("a lost frame freezes on the last decodable one and accumulates motion") {
  const auto trace = small_trace();
  FrameAssembler fa(trace, 1024);
  // ROI: frames 0,1 decodable; 2,3 lost. Non-ROI: everything decodable.
  deliver_frame(fa, trace, 0, Region::ROI);
  deliver_frame(fa, trace, 1, Region::ROI);
  for (std::int32_t f = 0; f < 4; ++f) deliver_frame(fa, trace, f, Region::NonROI);

  const auto qs = conceal_sequence(fa.statuses(), trace);
  CHECK(qs[1].mse_roi == doctest::Approx(20.0));
  // Frame 2 frozen from 1: enc_mse(1) + motion_mse(2) = 20 + 50.
  CHECK(qs[2].mse_roi == doctest::Approx(70.0));
  CHECK(qs[2].displayed_from_roi == 1);
  // Frame 3 keeps accumulating: 20 + 50 + 50.
  CHECK(qs[3].mse_roi == doctest::Approx(120.0));
  CHECK(qs[3].displayed_from_roi == 1);
  // The non-ROI decodes normally in the same frames.
  CHECK(qs[2].mse_nonroi == doctest::Approx(40.0));
  CHECK(qs[3].displayed_from_nonroi == 3);
}

TEST_CASE("no decodable predecessor falls back to the blank-frame distortion") {
  const auto trace = small_trace();
  FrameAssembler fa(trace, 1024);
  for (std::int32_t f = 0; f < 4; ++f) deliver_frame(fa, trace, f, Region::NonROI);
  const auto qs = conceal_sequence(fa.statuses(), trace);
  CHECK(qs[0].mse_roi == doctest::Approx(65025.0));
  CHECK(qs[0].psnr_roi == doctest::Approx(0.0));
  CHECK(qs[0].displayed_from_roi == -1);
}

TEST_CASE("combined distortion is the pixel-weighted mean, per frame") {
  const auto trace = small_trace();
  FrameAssembler fa(trace, 1024);
  for (std::int32_t f = 0; f < 4; ++f) {
    deliver_frame(fa, trace, f, Region::ROI);
    deliver_frame(fa, trace, f, Region::NonROI);
  }
  const auto qs = conceal_sequence(fa.statuses(), trace);
  for (const auto& q : qs) {
    // 100 px * mse_roi + 300 px * mse_nonroi == 400 px * mse_combined.
    const double combined_mse = 65025.0 * std::pow(10.0, -q.psnr_combined / 10.0);
    CHECK(100.0 * q.mse_roi + 300.0 * q.mse_nonroi == doctest::Approx(400.0 * combined_mse));
    CHECK(q.psnr_combined >= std::min(q.psnr_roi, q.psnr_nonroi));
    CHECK(q.psnr_combined <= std::max(q.psnr_roi, q.psnr_nonroi));
  }
}

TEST_CASE("dropping any delivered packet never improves any mean PSNR") {
  const auto trace = small_trace();
  std::uint64_t id = 0;
  std::vector<VideoPacket> all;
  for (std::int32_t f = 0; f < 4; ++f) {
    for (const Region r : {Region::ROI, Region::NonROI}) {
      for (const auto& p : packetize_frame(trace.at(f, r), 1024, 0, &id)) all.push_back(p);
    }
  }
  const auto mean_psnrs = [&](std::size_t skip) {
    FrameAssembler fa(trace, 1024);
    for (std::size_t i = 0; i < all.size(); ++i) {
      if (i != skip) fa.record_arrival(all[i]);
    }
    const auto qs = conceal_sequence(fa.statuses(), trace);
    return std::array<double, 3>{mean_psnr_roi(qs), mean_psnr_nonroi(qs), mean_psnr_combined(qs)};
  };
  const auto full = mean_psnrs(all.size());  // skip nothing
  for (std::size_t skip = 0; skip < all.size(); ++skip) {
    const auto reduced = mean_psnrs(skip);
    CHECK(reduced[0] <= full[0]);
    CHECK(reduced[1] <= full[1]);
    CHECK(reduced[2] <= full[2]);
  }
}

TEST_CASE("raising motion cost strictly lowers the PSNR of concealed frames") {
  auto trace = small_trace();
  FrameAssembler fa(trace, 1024);
  deliver_frame(fa, trace, 0, Region::ROI);
  for (std::int32_t f = 0; f < 4; ++f) deliver_frame(fa, trace, f, Region::NonROI);
  const auto before = conceal_sequence(fa.statuses(), trace);

  auto inflated = trace;
  for (auto& e : inflated.entries) e.motion_mse *= 2.0;
  FrameAssembler fa2(inflated, 1024);
  deliver_frame(fa2, inflated, 0, Region::ROI);
  for (std::int32_t f = 0; f < 4; ++f) deliver_frame(fa2, inflated, f, Region::NonROI);
  const auto after = conceal_sequence(fa2.statuses(), inflated);

  for (std::int32_t f = 1; f < 4; ++f) {
    CHECK(after[static_cast<std::size_t>(f)].psnr_roi <
          before[static_cast<std::size_t>(f)].psnr_roi);
  }
  CHECK(mean_psnr_roi(after) < mean_psnr_roi(before));
}

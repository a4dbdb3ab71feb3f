#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "roisim/mac/edca.hpp"
#include "roisim/mapper/mapping.hpp"
#include "roisim/metrics/quality.hpp"
#include "roisim/metrics/report.hpp"
#include "roisim/scenario.hpp"
#include "roisim/traffic/video_trace.hpp"

namespace roisim {

// Video packet ids are assigned from 0 in release order; cross-traffic ids
// start here so the two spaces never collide and the video ids can be
// re-derived from the trace alone.
constexpr std::uint64_t kCrossTrafficIdBase = 1'000'000'000ULL;

// One mapping decision, kept for post-run assertions (e.g. that no ROI
// packet was demoted below qth_high).
struct MapDecisionRecord {
  std::uint64_t packet_id = 0;
  Region region = Region::ROI;
  int qlen_seen = 0;
  double p_new_used = 0.0;
  AcIndex chosen_ac = AcIndex::AC2_Video;
};

struct RunRecord {
  std::string strategy;
  std::uint64_t seed = 0;
  bool failed = false;
  std::string error;

  MetricsReport report;
  MacStats mac_stats;
  std::vector<FrameQuality> frame_qualities;
  std::vector<MapDecisionRecord> decisions;
  double wall_seconds = 0.0;  // console diagnostics only, never written to files
};

// Runs one (strategy, seed) simulation over a pre-loaded trace.
RunRecord run_single(const Scenario& scenario, const std::string& strategy, std::uint64_t seed,
                     const VideoTrace& trace);

// Full sweep: every strategy x seed on a fresh engine, identical trace and
// seed-derived cross-traffic schedule. A failed run is recorded and the
// sweep continues.
std::vector<RunRecord> run_experiment(const Scenario& scenario, const VideoTrace& trace);
std::vector<RunRecord> run_experiment(const Scenario& scenario);

// Writes summary.csv, per-run packet and frame logs, the plain-text
// comparison table and manifest.txt into out_dir. Returns the manifest
// lines ("<bytes> <path>" relative to out_dir, sorted).
std::vector<std::string> write_reports(const std::vector<RunRecord>& records,
                                       const std::filesystem::path& out_dir);

// Re-derives summary.csv and comparison.txt from previously written per-run
// logs (the `report` subcommand). The scenario supplies the trace and MTU so
// video packet ids can be mapped back to regions.
std::vector<std::string> rederive_reports(const Scenario& scenario,
                                          const std::filesystem::path& out_dir);

// Mean-over-seeds aggregate used by the comparison table.
struct StrategySummary {
  std::string strategy;
  double sent_roi = 0, recv_roi = 0, sent_nonroi = 0, recv_nonroi = 0;
  double sent_total = 0, recv_total = 0;
  double pdr_roi = 0, pdr_nonroi = 0, pdr_total = 0;
  double enc_psnr_roi = 0, recv_psnr_roi = 0;
  double enc_psnr_nonroi = 0, recv_psnr_nonroi = 0;
  double enc_psnr_combined = 0, recv_psnr_combined = 0;
};

std::vector<StrategySummary> summarize_by_strategy(const std::vector<RunRecord>& records);

}  // namespace roisim

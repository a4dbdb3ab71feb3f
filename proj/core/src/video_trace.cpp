#include "roisim/traffic/video_trace.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "roisim/sim/rng.hpp"

namespace roisim {

const VideoTraceEntry& VideoTrace::at(std::int32_t frame_index, Region region) const {
  const std::size_t idx =
      2 * static_cast<std::size_t>(frame_index) + (region == Region::ROI ? 0 : 1);
  if (idx >= entries.size() || entries[idx].frame_index != frame_index ||
      entries[idx].region != region) {
    throw std::out_of_range("trace has no entry for frame " + std::to_string(frame_index));
  }
  return entries[idx];
}

std::int64_t VideoTrace::total_bytes(Region region) const {
  std::int64_t sum = 0;
  for (const auto& e : entries) {
    if (e.region == region) sum += e.size_bytes;
  }
  return sum;
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  return out;
}

[[noreturn]] void parse_fail(int line_no, const std::string& msg) {
  throw std::runtime_error("trace parse error at line " + std::to_string(line_no) + ": " + msg);
}

}  // namespace

VideoTrace load_video_trace(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open trace file: " + path.string());

  VideoTrace trace;
  std::string line;
  int line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      if (line != "frame_index,region,size_bytes,enc_mse,motion_mse,pixel_count") {
        parse_fail(line_no,
                   "expected header frame_index,region,size_bytes,enc_mse,motion_mse,pixel_count");
      }
      header_seen = true;
      continue;
    }
    const auto fields = split_csv(line);
    if (fields.size() != 6) parse_fail(line_no, "expected 6 fields, got " + std::to_string(fields.size()));
    VideoTraceEntry e;
    try {
      e.frame_index = std::stoi(fields[0]);
      e.region = region_from_string(fields[1]);
      e.size_bytes = std::stoll(fields[2]);
      e.enc_mse = std::stod(fields[3]);
      e.motion_mse = std::stod(fields[4]);
      e.pixel_count = std::stoll(fields[5]);
    } catch (const std::exception& ex) {
      parse_fail(line_no, ex.what());
    }
    if (e.frame_index < 0) parse_fail(line_no, "negative frame_index");
    if (e.size_bytes <= 0) parse_fail(line_no, "size_bytes must be > 0");
    if (e.pixel_count <= 0) parse_fail(line_no, "pixel_count must be > 0");
    if (e.enc_mse < 0 || e.motion_mse < 0) parse_fail(line_no, "mse fields must be >= 0");
    trace.entries.push_back(e);
  }
  if (trace.entries.empty()) throw std::runtime_error("trace file has no entries: " + path.string());

  std::stable_sort(trace.entries.begin(), trace.entries.end(), [](const auto& a, const auto& b) {
    if (a.frame_index != b.frame_index) return a.frame_index < b.frame_index;
    return static_cast<int>(a.region) < static_cast<int>(b.region);
  });

  // Exactly one ROI and one NonROI entry per frame, frames contiguous from 0.
  if (trace.entries.size() % 2 != 0) throw std::runtime_error("trace has an odd number of entries");
  const std::int64_t roi_px = trace.entries[0].pixel_count;
  const std::int64_t nonroi_px = trace.entries[1].pixel_count;
  for (std::size_t i = 0; i < trace.entries.size(); i += 2) {
    const auto& roi = trace.entries[i];
    const auto& nonroi = trace.entries[i + 1];
    const auto expect = static_cast<std::int32_t>(i / 2);
    if (roi.frame_index != expect || nonroi.frame_index != expect ||
        roi.region != Region::ROI || nonroi.region != Region::NonROI) {
      throw std::runtime_error("trace invariant violation at frame " + std::to_string(expect) +
                               ": expected exactly one ROI and one NONROI entry per frame index");
    }
    if (roi.pixel_count != roi_px || nonroi.pixel_count != nonroi_px) {
      throw std::runtime_error("trace invariant violation at frame " + std::to_string(expect) +
                               ": pixel split must be constant across frames");
    }
  }
  return trace;
}

void write_video_trace(const VideoTrace& trace, std::ostream& out) {
  out << "frame_index,region,size_bytes,enc_mse,motion_mse,pixel_count\n";
  char buf[160];
  for (const auto& e : trace.entries) {
    std::snprintf(buf, sizeof(buf), "%d,%s,%lld,%.6f,%.6f,%lld\n", e.frame_index,
                  to_string(e.region), static_cast<long long>(e.size_bytes), e.enc_mse,
                  e.motion_mse, static_cast<long long>(e.pixel_count));
    out << buf;
  }
}

void write_video_trace(const VideoTrace& trace, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write trace file: " + path.string());
  write_video_trace(trace, out);
}

namespace {

// Per-frame fragment counts with a fixed total: start from an even split,
// shuffle size variety in with +1/-1 swaps, then distribute the remainder.
std::vector<int> fragment_counts(std::int32_t frames, std::int64_t packet_total, RngStream& rng) {
  const int base = static_cast<int>(packet_total / frames);
  std::vector<int> counts(static_cast<std::size_t>(frames), base);
  std::int64_t remainder = packet_total - static_cast<std::int64_t>(base) * frames;
  // Spread the remainder over distinct random frames.
  while (remainder > 0) {
    const auto i = rng.uniform_int(static_cast<std::uint64_t>(frames - 1));
    if (counts[i] == base) {
      ++counts[i];
      --remainder;
    }
  }
  // Variety swaps keep the sum fixed.
  const int swaps = frames * 2;
  for (int s = 0; s < swaps; ++s) {
    const auto i = rng.uniform_int(static_cast<std::uint64_t>(frames - 1));
    const auto j = rng.uniform_int(static_cast<std::uint64_t>(frames - 1));
    if (i == j) continue;
    if (counts[i] > 1) {
      --counts[i];
      ++counts[j];
    }
  }
  return counts;
}

double psnr_to_mse(double psnr_db) { return 65025.0 * std::pow(10.0, -psnr_db / 10.0); }

}  // namespace

VideoTrace generate_reference_trace(const TraceGenConfig& cfg) {
  if (cfg.frames <= 0) throw std::invalid_argument("trace generator: frames must be > 0");
  if (cfg.mtu <= 0) throw std::invalid_argument("trace generator: mtu must be > 0");
  if (cfg.roi_pixel_fraction <= 0.0 || cfg.roi_pixel_fraction >= 1.0) {
    throw std::invalid_argument("trace generator: roi_pixel_fraction must be in (0,1)");
  }
  if (cfg.roi_packet_total < cfg.frames || cfg.nonroi_packet_total < cfg.frames) {
    throw std::invalid_argument("trace generator: packet totals must be >= frame count");
  }

  RngStream rng(cfg.seed, "trace-gen");
  const auto roi_counts = fragment_counts(cfg.frames, cfg.roi_packet_total, rng);
  const auto nonroi_counts = fragment_counts(cfg.frames, cfg.nonroi_packet_total, rng);

  const auto roi_px = static_cast<std::int64_t>(
      static_cast<double>(cfg.frame_pixels) * cfg.roi_pixel_fraction + 0.5);
  const auto nonroi_px = cfg.frame_pixels - roi_px;

  VideoTrace trace;
  trace.entries.reserve(2 * static_cast<std::size_t>(cfg.frames));
  for (std::int32_t f = 0; f < cfg.frames; ++f) {
    auto make_entry = [&](Region region, int fragments) {
      VideoTraceEntry e;
      e.frame_index = f;
      e.region = region;
      // Last fragment lands in [mtu/2, mtu] so ceil(size/mtu) == fragments.
      const auto last = static_cast<std::int64_t>(
          cfg.mtu / 2 + static_cast<std::int64_t>(rng.uniform_int(static_cast<std::uint64_t>(cfg.mtu - cfg.mtu / 2))));
      e.size_bytes = static_cast<std::int64_t>(fragments - 1) * cfg.mtu + last;
      const bool roi = region == Region::ROI;
      const double target = roi ? cfg.roi_psnr_db : cfg.nonroi_psnr_db;
      const double psnr = target + (rng.uniform01() * 2.0 - 1.0) * cfg.psnr_spread_db;
      e.enc_mse = psnr_to_mse(psnr);
      const double mlo = roi ? cfg.roi_motion_mse_min : cfg.nonroi_motion_mse_min;
      const double mhi = roi ? cfg.roi_motion_mse_max : cfg.nonroi_motion_mse_max;
      e.motion_mse = mlo + rng.uniform01() * (mhi - mlo);
      e.pixel_count = roi ? roi_px : nonroi_px;
      return e;
    };
    trace.entries.push_back(make_entry(Region::ROI, roi_counts[static_cast<std::size_t>(f)]));
    trace.entries.push_back(make_entry(Region::NonROI, nonroi_counts[static_cast<std::size_t>(f)]));
  }
  return trace;
}

}  // namespace roisim

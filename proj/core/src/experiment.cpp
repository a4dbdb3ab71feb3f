#include "roisim/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "roisim/metrics/receiver.hpp"
#include "roisim/sim/event_queue.hpp"
#include "roisim/traffic/cross_traffic.hpp"
#include "roisim/traffic/packetizer.hpp"

namespace roisim {

RunRecord run_single(const Scenario& scenario, const std::string& strategy, std::uint64_t seed,
                     const VideoTrace& trace) {
  const auto wall_start = std::chrono::steady_clock::now();
  RunRecord rec;
  rec.strategy = strategy;
  rec.seed = seed;

  const int ac2_capacity = scenario.edca.ac[static_cast<int>(AcIndex::AC2_Video)].queue_capacity;
  PacketMapper mapper = PacketMapper::make(strategy, scenario.mapping, scenario.uniform_p,
                                           ac2_capacity);

  EventQueue engine;
  RngStream mapper_rng(seed, "mapper");
  EdcaMac mac(engine, scenario.edca, scenario.channel.build(), RngStream(seed, "backoff"),
              RngStream(seed, "channel"));

  FrameAssembler assembler(trace, scenario.mtu);
  const SimTime deadline_us =
      scenario.playout_deadline_ms > 0.0
          ? static_cast<SimTime>(scenario.playout_deadline_ms * 1000.0 + 0.5)
          : -1;
  std::int64_t delivered_roi = 0;
  std::int64_t delivered_nonroi = 0;
  mac.set_delivery_handler([&](const MacPacket& pkt, SimTime at) {
    if (!pkt.video) return;
    if (deadline_us >= 0 && at - pkt.video->created_at > deadline_us) return;  // late, discarded
    assembler.record_arrival(*pkt.video);
    (pkt.video->region == Region::ROI ? delivered_roi : delivered_nonroi) += 1;
  });

  // Video source: both region-frames of an index release together, ROI
  // first; each packet is mapped against the AC2 queue length sampled at
  // that instant, then enqueued before the next packet is mapped.
  std::uint64_t next_video_id = 0;
  const auto releases = frame_release_schedule(scenario.fps, trace.frame_count());
  for (std::int32_t f = 0; f < trace.frame_count(); ++f) {
    engine.schedule(releases[static_cast<std::size_t>(f)], [&, f] {
      for (const Region region : {Region::ROI, Region::NonROI}) {
        const auto& entry = trace.at(f, region);
        for (auto& packet : packetize_frame(entry, scenario.mtu, engine.now(), &next_video_id)) {
          const int qlen = mac.snapshot_qlen(AcIndex::AC2_Video);
          const AcDecision d = mapper.map_packet(region, qlen, mapper_rng);
          rec.decisions.push_back(
              MapDecisionRecord{packet.packet_id, region, d.qlen_seen, d.p_new_used, d.chosen_ac});
          MacPacket mp;
          mp.id = packet.packet_id;
          mp.size_bytes = packet.size_bytes;
          mp.created_at = packet.created_at;
          mp.video = packet;
          mac.enqueue(std::move(mp), d.chosen_ac);
        }
      }
    });
  }

  std::uint64_t next_cross_id = kCrossTrafficIdBase;
  std::vector<std::unique_ptr<CrossTrafficSource>> sources;
  for (std::size_t i = 0; i < scenario.cross_traffic.size(); ++i) {
    sources.push_back(std::make_unique<CrossTrafficSource>(
        engine, mac, scenario.cross_traffic[i],
        RngStream(seed, "source-jitter-" + std::to_string(i)), &next_cross_id));
    sources.back()->start();
  }

  engine.run_until(seconds_to_us(scenario.duration_s));
  mac.finalize();
  if (!mac.conservation_holds()) {
    throw std::logic_error("MAC conservation violated (enqueued != drops + successes + expiries "
                           "+ pending)");
  }

  rec.frame_qualities = conceal_sequence(assembler.statuses(), trace);
  const auto encoding = encoding_reference(trace);
  rec.report = summarize(assembler, rec.frame_qualities, encoding, trace, scenario.mtu,
                         mac.stats(), delivered_roi, delivered_nonroi);
  rec.mac_stats = mac.stats();
  rec.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - wall_start).count();
  return rec;
}

std::vector<RunRecord> run_experiment(const Scenario& scenario, const VideoTrace& trace) {
  std::vector<RunRecord> records;
  for (const auto& strategy : scenario.strategies) {
    for (const auto seed : scenario.seeds) {
      try {
        records.push_back(run_single(scenario, strategy, seed, trace));
      } catch (const std::exception& ex) {
        RunRecord failed;
        failed.strategy = strategy;
        failed.seed = seed;
        failed.failed = true;
        failed.error = ex.what();
        records.push_back(std::move(failed));
      }
    }
  }
  return records;
}

std::vector<RunRecord> run_experiment(const Scenario& scenario) {
  scenario.validate_or_throw();
  return run_experiment(scenario, load_video_trace(scenario.trace_path));
}

namespace {

std::string run_dir_name(const std::string& strategy, std::uint64_t seed) {
  return strategy + "-seed" + std::to_string(seed);
}

void write_file(const std::filesystem::path& path, const std::string& content,
                std::vector<std::pair<std::string, std::uintmax_t>>* manifest,
                const std::filesystem::path& root) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write output file: " + path.string());
  out << content;
  out.close();
  manifest->emplace_back(std::filesystem::relative(path, root).generic_string(), content.size());
}

std::string format_packets_csv(const MacStats& stats) {
  std::string out = "packet_id,ac,enqueue_us,outcome,dequeue_us,retries\n";
  char buf[160];
  for (const auto& e : stats.packet_log) {
    std::snprintf(buf, sizeof(buf), "%llu,%s,%lld,%s,%lld,%d\n",
                  static_cast<unsigned long long>(e.packet_id), to_string(e.ac),
                  static_cast<long long>(e.enqueue_us), to_string(e.outcome),
                  static_cast<long long>(e.dequeue_us), e.retries);
    out += buf;
  }
  return out;
}

std::string format_frames_csv(const std::vector<FrameQuality>& qualities) {
  std::string out =
      "frame_index,mse_roi,mse_nonroi,psnr_roi,psnr_nonroi,psnr_combined,"
      "displayed_from_roi,displayed_from_nonroi\n";
  char buf[240];
  for (const auto& q : qualities) {
    std::snprintf(buf, sizeof(buf), "%d,%.6f,%.6f,%.4f,%.4f,%.4f,%d,%d\n", q.frame_index,
                  q.mse_roi, q.mse_nonroi, q.psnr_roi, q.psnr_nonroi, q.psnr_combined,
                  q.displayed_from_roi, q.displayed_from_nonroi);
    out += buf;
  }
  return out;
}

const char* kSummaryHeader =
    "strategy,seed,sent_roi,recv_roi,sent_nonroi,recv_nonroi,sent_total,recv_total,"
    "pdr_roi,pdr_nonroi,pdr_total,enc_psnr_roi,recv_psnr_roi,enc_psnr_nonroi,"
    "recv_psnr_nonroi,enc_psnr_combined,recv_psnr_combined\n";

std::string summary_row(const std::string& strategy, const std::string& seed_label,
                        const StrategySummary& s) {
  char buf[512];
  std::snprintf(buf, sizeof(buf),
                "%s,%s,%.1f,%.1f,%.1f,%.1f,%.1f,%.1f,%.4f,%.4f,%.4f,%.2f,%.2f,%.2f,%.2f,%.2f,%.2f\n",
                strategy.c_str(), seed_label.c_str(), s.sent_roi, s.recv_roi, s.sent_nonroi,
                s.recv_nonroi, s.sent_total, s.recv_total, s.pdr_roi, s.pdr_nonroi, s.pdr_total,
                s.enc_psnr_roi, s.recv_psnr_roi, s.enc_psnr_nonroi, s.recv_psnr_nonroi,
                s.enc_psnr_combined, s.recv_psnr_combined);
  return buf;
}

StrategySummary to_summary(const RunRecord& r) {
  StrategySummary s;
  s.strategy = r.strategy;
  s.sent_roi = static_cast<double>(r.report.roi.packets_sent);
  s.recv_roi = static_cast<double>(r.report.roi.packets_received);
  s.sent_nonroi = static_cast<double>(r.report.nonroi.packets_sent);
  s.recv_nonroi = static_cast<double>(r.report.nonroi.packets_received);
  s.sent_total = static_cast<double>(r.report.total.packets_sent);
  s.recv_total = static_cast<double>(r.report.total.packets_received);
  s.pdr_roi = r.report.roi.pdr();
  s.pdr_nonroi = r.report.nonroi.pdr();
  s.pdr_total = r.report.total.pdr();
  s.enc_psnr_roi = r.report.enc_psnr_roi;
  s.recv_psnr_roi = r.report.recv_psnr_roi;
  s.enc_psnr_nonroi = r.report.enc_psnr_nonroi;
  s.recv_psnr_nonroi = r.report.recv_psnr_nonroi;
  s.enc_psnr_combined = r.report.enc_psnr_combined;
  s.recv_psnr_combined = r.report.recv_psnr_combined;
  return s;
}

}  // namespace

std::vector<StrategySummary> summarize_by_strategy(const std::vector<RunRecord>& records) {
  std::vector<StrategySummary> out;
  std::vector<std::string> order;
  std::map<std::string, std::vector<StrategySummary>> grouped;
  for (const auto& r : records) {
    if (r.failed) continue;
    if (!grouped.count(r.strategy)) order.push_back(r.strategy);
    grouped[r.strategy].push_back(to_summary(r));
  }
  for (const auto& strategy : order) {
    const auto& rows = grouped[strategy];
    StrategySummary mean;
    mean.strategy = strategy;
    const double n = static_cast<double>(rows.size());
    for (const auto& row : rows) {
      mean.sent_roi += row.sent_roi / n;
      mean.recv_roi += row.recv_roi / n;
      mean.sent_nonroi += row.sent_nonroi / n;
      mean.recv_nonroi += row.recv_nonroi / n;
      mean.sent_total += row.sent_total / n;
      mean.recv_total += row.recv_total / n;
      mean.pdr_roi += row.pdr_roi / n;
      mean.pdr_nonroi += row.pdr_nonroi / n;
      mean.pdr_total += row.pdr_total / n;
      mean.enc_psnr_roi += row.enc_psnr_roi / n;
      mean.recv_psnr_roi += row.recv_psnr_roi / n;
      mean.enc_psnr_nonroi += row.enc_psnr_nonroi / n;
      mean.recv_psnr_nonroi += row.recv_psnr_nonroi / n;
      mean.enc_psnr_combined += row.enc_psnr_combined / n;
      mean.recv_psnr_combined += row.recv_psnr_combined / n;
    }
    out.push_back(mean);
  }
  return out;
}

namespace {

std::string format_comparison(const std::vector<StrategySummary>& summaries) {
  std::string out;
  char buf[256];
  out += "Packet delivery by strategy (mean over seeds)\n";
  std::snprintf(buf, sizeof(buf), "%-10s %10s %10s %12s %12s %10s %10s %8s\n", "strategy",
                "sent_roi", "recv_roi", "sent_nonroi", "recv_nonroi", "sent", "recv", "pdr");
  out += buf;
  for (const auto& s : summaries) {
    std::snprintf(buf, sizeof(buf), "%-10s %10.1f %10.1f %12.1f %12.1f %10.1f %10.1f %8.4f\n",
                  s.strategy.c_str(), s.sent_roi, s.recv_roi, s.sent_nonroi, s.recv_nonroi,
                  s.sent_total, s.recv_total, s.pdr_total);
    out += buf;
  }
  out += "\nAverage PSNR by strategy, dB (mean over seeds)\n";
  std::snprintf(buf, sizeof(buf), "%-10s %8s %8s %11s %11s %9s %9s\n", "strategy", "enc_roi",
                "recv_roi", "enc_nonroi", "recv_nonroi", "enc_all", "recv_all");
  out += buf;
  for (const auto& s : summaries) {
    std::snprintf(buf, sizeof(buf), "%-10s %8.2f %8.2f %11.2f %11.2f %9.2f %9.2f\n",
                  s.strategy.c_str(), s.enc_psnr_roi, s.recv_psnr_roi, s.enc_psnr_nonroi,
                  s.recv_psnr_nonroi, s.enc_psnr_combined, s.recv_psnr_combined);
    out += buf;
  }
  return out;
}

std::string format_summary_csv(const std::vector<RunRecord>& records,
                               const std::vector<StrategySummary>& means) {
  std::string out = kSummaryHeader;
  for (const auto& r : records) {
    if (r.failed) continue;
    out += summary_row(r.strategy, std::to_string(r.seed), to_summary(r));
  }
  for (const auto& m : means) {
    out += summary_row(m.strategy, "mean", m);
  }
  return out;
}

}  // namespace

std::vector<std::string> write_reports(const std::vector<RunRecord>& records,
                                       const std::filesystem::path& out_dir) {
  if (records.empty()) throw std::invalid_argument("write_reports: no run records");
  std::filesystem::create_directories(out_dir);

  std::vector<std::pair<std::string, std::uintmax_t>> manifest;
  for (const auto& r : records) {
    if (r.failed) continue;
    const auto dir = out_dir / "runs" / run_dir_name(r.strategy, r.seed);
    std::filesystem::create_directories(dir);
    write_file(dir / "packets.csv", format_packets_csv(r.mac_stats), &manifest, out_dir);
    write_file(dir / "frames.csv", format_frames_csv(r.frame_qualities), &manifest, out_dir);
  }

  const auto means = summarize_by_strategy(records);
  write_file(out_dir / "summary.csv", format_summary_csv(records, means), &manifest, out_dir);
  write_file(out_dir / "comparison.txt", format_comparison(means), &manifest, out_dir);

  std::sort(manifest.begin(), manifest.end());
  std::string manifest_text;
  std::vector<std::string> lines;
  for (const auto& [path, bytes] : manifest) {
    const std::string line = std::to_string(bytes) + " " + path;
    manifest_text += line + "\n";
    lines.push_back(line);
  }
  {
    std::ofstream out(out_dir / "manifest.txt", std::ios::binary);
    if (!out) throw std::runtime_error("cannot write manifest: " + (out_dir / "manifest.txt").string());
    out << manifest_text;
  }
  return lines;
}

std::vector<std::string> rederive_reports(const Scenario& scenario,
                                          const std::filesystem::path& out_dir) {
  const VideoTrace trace = load_video_trace(scenario.trace_path);

  // Video packet ids are deterministic in release order, so the per-region
  // split can be rebuilt from the trace without the original run.
  std::map<std::uint64_t, Region> region_of;
  std::uint64_t next_id = 0;
  for (std::int32_t f = 0; f < trace.frame_count(); ++f) {
    for (const Region region : {Region::ROI, Region::NonROI}) {
      const auto& entry = trace.at(f, region);
      for (const auto& p : packetize_frame(entry, scenario.mtu, 0, &next_id)) {
        region_of[p.packet_id] = p.region;
      }
    }
  }

  const auto runs_dir = out_dir / "runs";
  if (!std::filesystem::is_directory(runs_dir)) {
    throw std::runtime_error("no runs/ directory under " + out_dir.string());
  }

  std::vector<RunRecord> records;
  std::vector<std::filesystem::path> run_dirs;
  for (const auto& e : std::filesystem::directory_iterator(runs_dir)) {
    if (e.is_directory()) run_dirs.push_back(e.path());
  }
  // Scenario strategy order first, then seed, so the re-derived tables match
  // the originals row for row.
  const auto strategy_rank = [&](const std::string& name) {
    for (std::size_t i = 0; i < scenario.strategies.size(); ++i) {
      if (scenario.strategies[i] == name) return i;
    }
    return scenario.strategies.size();
  };
  const auto dir_key = [&](const std::filesystem::path& dir) {
    const std::string name = dir.filename().string();
    const auto sep = name.rfind("-seed");
    std::uint64_t seed = 0;
    std::string strategy = name;
    if (sep != std::string::npos) {
      strategy = name.substr(0, sep);
      try {
        seed = std::stoull(name.substr(sep + 5));
      } catch (const std::exception&) {
      }
    }
    return std::tuple(strategy_rank(strategy), strategy, seed);
  };
  std::sort(run_dirs.begin(), run_dirs.end(),
            [&](const auto& a, const auto& b) { return dir_key(a) < dir_key(b); });

  for (const auto& dir : run_dirs) {
    const std::string name = dir.filename().string();
    const auto sep = name.rfind("-seed");
    if (sep == std::string::npos) continue;
    RunRecord rec;
    rec.strategy = name.substr(0, sep);
    rec.seed = std::stoull(name.substr(sep + 5));

    // Packet counts from the MAC log.
    std::ifstream packets(dir / "packets.csv");
    if (!packets) throw std::runtime_error("missing packets.csv in " + dir.string());
    std::string line;
    std::getline(packets, line);  // header
    while (std::getline(packets, line)) {
      std::stringstream ss(line);
      std::string id_s, ac_s, enq_s, outcome_s;
      std::getline(ss, id_s, ',');
      std::getline(ss, ac_s, ',');
      std::getline(ss, enq_s, ',');
      std::getline(ss, outcome_s, ',');
      const std::uint64_t id = std::stoull(id_s);
      const auto it = region_of.find(id);
      if (it == region_of.end()) continue;  // cross traffic
      auto& counts = it->second == Region::ROI ? rec.report.roi : rec.report.nonroi;
      ++counts.packets_sent;
      if (outcome_s == "DELIVERED") ++counts.packets_received;
    }
    rec.report.total.packets_sent = rec.report.roi.packets_sent + rec.report.nonroi.packets_sent;
    rec.report.total.packets_received =
        rec.report.roi.packets_received + rec.report.nonroi.packets_received;

    // PSNR means from the frame log.
    std::ifstream frames(dir / "frames.csv");
    if (!frames) throw std::runtime_error("missing frames.csv in " + dir.string());
    std::getline(frames, line);  // header
    while (std::getline(frames, line)) {
      std::stringstream ss(line);
      std::string field;
      FrameQuality q;
      std::getline(ss, field, ',');
      q.frame_index = std::stoi(field);
      std::getline(ss, field, ',');
      q.mse_roi = std::stod(field);
      std::getline(ss, field, ',');
      q.mse_nonroi = std::stod(field);
      std::getline(ss, field, ',');
      q.psnr_roi = std::stod(field);
      std::getline(ss, field, ',');
      q.psnr_nonroi = std::stod(field);
      std::getline(ss, field, ',');
      q.psnr_combined = std::stod(field);
      rec.frame_qualities.push_back(q);
    }
    rec.report.recv_psnr_roi = mean_psnr_roi(rec.frame_qualities);
    rec.report.recv_psnr_nonroi = mean_psnr_nonroi(rec.frame_qualities);
    rec.report.recv_psnr_combined = mean_psnr_combined(rec.frame_qualities);
    const auto encoding = encoding_reference(trace);
    rec.report.enc_psnr_roi = mean_psnr_roi(encoding);
    rec.report.enc_psnr_nonroi = mean_psnr_nonroi(encoding);
    rec.report.enc_psnr_combined = mean_psnr_combined(encoding);
    rec.mac_stats.packet_log.clear();
    records.push_back(std::move(rec));
  }
  if (records.empty()) throw std::runtime_error("no run logs found under " + runs_dir.string());

  const auto means = summarize_by_strategy(records);
  std::vector<std::pair<std::string, std::uintmax_t>> manifest;
  write_file(out_dir / "summary.csv", format_summary_csv(records, means), &manifest, out_dir);
  write_file(out_dir / "comparison.txt", format_comparison(means), &manifest, out_dir);
  std::vector<std::string> lines;
  for (const auto& [path, bytes] : manifest) lines.push_back(std::to_string(bytes) + " " + path);
  return lines;
}

}  // namespace roisim

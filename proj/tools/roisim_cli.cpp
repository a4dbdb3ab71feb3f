// Experiment runner: strategy x seed sweeps over a scenario file, reference
// trace generation, scenario linting and report re-derivation.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "roisim/experiment.hpp"
#include "roisim/scenario.hpp"
#include "roisim/traffic/packetizer.hpp"
#include "roisim/traffic/video_trace.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitRunFailed = 2;

struct RunArgs {
  std::string scenario_path;
  std::string out_dir;
  std::string seeds_csv;
  std::string strategies_csv;
  double playout_deadline_ms = 0.0;
  bool playout_deadline_set = false;
};

std::vector<std::string> split_list(const std::string& csv) {
  std::vector<std::string> out;
  std::string item;
  for (const char c : csv) {
    if (c == ',') {
      if (!item.empty()) out.push_back(item);
      item.clear();
    } else {
      item += c;
    }
  }
  if (!item.empty()) out.push_back(item);
  return out;
}

int do_run(const RunArgs& args) {
  roisim::Scenario scenario = roisim::Scenario::load(args.scenario_path);
  if (!args.out_dir.empty()) scenario.out_dir = args.out_dir;
  if (!args.seeds_csv.empty()) {
    scenario.seeds.clear();
    for (const auto& s : split_list(args.seeds_csv)) scenario.seeds.push_back(std::stoull(s));
  }
  if (!args.strategies_csv.empty()) scenario.strategies = split_list(args.strategies_csv);
  if (args.playout_deadline_set) scenario.playout_deadline_ms = args.playout_deadline_ms;
  if (scenario.out_dir.empty()) {
    std::fprintf(stderr, "error: no output directory (pass --out or set out_dir)\n");
    return kExitUsage;
  }
  scenario.validate_or_throw();

  const auto records = roisim::run_experiment(scenario);
  roisim::write_reports(records, scenario.out_dir);

  bool any_failed = false;
  for (const auto& r : records) {
    if (r.failed) {
      any_failed = true;
      std::fprintf(stderr, "run %s seed %llu FAILED: %s\n", r.strategy.c_str(),
                   static_cast<unsigned long long>(r.seed), r.error.c_str());
    } else {
      std::fprintf(stderr,
                   "run %s seed %llu: pdr %.4f (roi %.4f) recv psnr %.2f dB, %.3f s wall\n",
                   r.strategy.c_str(), static_cast<unsigned long long>(r.seed),
                   r.report.total.pdr(), r.report.roi.pdr(), r.report.recv_psnr_combined,
                   r.wall_seconds);
    }
  }
  std::fprintf(stderr, "reports written to %s\n", scenario.out_dir.string().c_str());
  return any_failed ? kExitRunFailed : kExitOk;
}

int do_gen_trace(const std::string& out_path, const roisim::TraceGenConfig& cfg) {
  const auto trace = roisim::generate_reference_trace(cfg);
  roisim::write_video_trace(trace, std::filesystem::path(out_path));
  const auto roi = roisim::expected_packet_count(trace, cfg.mtu, roisim::Region::ROI);
  const auto nonroi = roisim::expected_packet_count(trace, cfg.mtu, roisim::Region::NonROI);
  std::fprintf(stderr, "wrote %s: %d frames, %lld ROI + %lld non-ROI packets at mtu %d\n",
               out_path.c_str(), cfg.frames, static_cast<long long>(roi),
               static_cast<long long>(nonroi), cfg.mtu);
  return kExitOk;
}

int do_validate(const std::string& scenario_path) {
  const auto scenario = roisim::Scenario::load(scenario_path);
  const auto errors = scenario.validate();
  if (errors.empty()) {
    std::printf("scenario OK\n");
    return kExitOk;
  }
  for (const auto& e : errors) std::fprintf(stderr, "invalid: %s\n", e.c_str());
  return kExitUsage;
}

int do_report(const std::string& scenario_path, const std::string& out_dir) {
  const auto scenario = roisim::Scenario::load(scenario_path);
  const auto lines = roisim::rederive_reports(scenario, out_dir);
  for (const auto& l : lines) std::printf("%s\n", l.c_str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ROI-aware video over EDCA simulator"};
  app.require_subcommand(1);

  RunArgs run_args;
  auto* run = app.add_subcommand("run", "Run a strategy x seed sweep and write reports");
  run->add_option("--scenario", run_args.scenario_path, "Scenario TOML file")->required();
  run->add_option("--out", run_args.out_dir, "Output directory");
  run->add_option("--seeds", run_args.seeds_csv, "Comma-separated seed list override");
  run->add_option("--strategies", run_args.strategies_csv,
                  "Comma-separated strategy list override (edca,uniform,roi)");
  run->add_option("--playout-deadline-ms", run_args.playout_deadline_ms,
                  "Discard packets delivered later than this after their release")
      ->each([&](const std::string&) { run_args.playout_deadline_set = true; });

  roisim::TraceGenConfig gen_cfg;
  std::string gen_out = "reference_trace.csv";
  auto* gen = app.add_subcommand("gen-trace", "Generate the deterministic reference video trace");
  gen->add_option("--out", gen_out, "Output CSV path");
  gen->add_option("--seed", gen_cfg.seed, "Generator seed");
  gen->add_option("--frames", gen_cfg.frames, "Frame count");
  gen->add_option("--mtu", gen_cfg.mtu, "MTU used to pin packet counts");
  gen->add_option("--roi-packets", gen_cfg.roi_packet_total, "Total ROI packet count");
  gen->add_option("--nonroi-packets", gen_cfg.nonroi_packet_total, "Total non-ROI packet count");
  gen->add_option("--roi-psnr", gen_cfg.roi_psnr_db, "Encoding ROI PSNR target (dB)");
  gen->add_option("--nonroi-psnr", gen_cfg.nonroi_psnr_db, "Encoding non-ROI PSNR target (dB)");
  gen->add_option("--roi-motion-min", gen_cfg.roi_motion_mse_min, "ROI freeze cost lower bound");
  gen->add_option("--roi-motion-max", gen_cfg.roi_motion_mse_max, "ROI freeze cost upper bound");
  gen->add_option("--nonroi-motion-min", gen_cfg.nonroi_motion_mse_min,
                  "non-ROI freeze cost lower bound");
  gen->add_option("--nonroi-motion-max", gen_cfg.nonroi_motion_mse_max,
                  "non-ROI freeze cost upper bound");

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "Lint a scenario file");
  validate->add_option("--scenario", validate_path, "Scenario TOML file")->required();

  std::string report_scenario;
  std::string report_dir;
  auto* report = app.add_subcommand("report", "Re-derive summary tables from per-run logs");
  report->add_option("--scenario", report_scenario, "Scenario TOML file")->required();
  report->add_option("--runs", report_dir, "Output directory of a previous run")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (run->parsed()) return do_run(run_args);
    if (gen->parsed()) return do_gen_trace(gen_out, gen_cfg);
    if (validate->parsed()) return do_validate(validate_path);
    if (report->parsed()) return do_report(report_scenario, report_dir);
  } catch (const std::exception& ex) {
    std::fprintf(stderr, "error: %s\n", ex.what());
    return kExitUsage;
  }
  return kExitUsage;
}

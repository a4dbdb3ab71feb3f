#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "roisim/scenario.hpp"
#include "roisim/traffic/video_trace.hpp"

using namespace roisim;

namespace {

std::filesystem::path write_temp(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream out(path, std::ios::binary);
  out << content;
  return path;
}

std::filesystem::path temp_trace() {
  static const auto path = [] {
    TraceGenConfig cfg;
    cfg.frames = 30;
    cfg.roi_packet_total = 120;
    cfg.nonroi_packet_total = 300;
    const auto p = std::filesystem::temp_directory_path() / "roisim_scenario_trace.csv";
    write_video_trace(generate_reference_trace(cfg), p);
    return p;
  }();
  return path;
}

}  // namespace

TEST_CASE("a minimal scenario fills every default") {
  const auto path = write_temp("roisim_minimal.toml",
                               "trace = \"" + temp_trace().string() + "\"\n"
                               "strategies = [\"roi\"]\n");
  const auto sc = Scenario::load(path);
  CHECK(sc.strategies == std::vector<std::string>{"roi"});
  CHECK(sc.seeds == std::vector<std::uint64_t>{1});
  CHECK(sc.mtu == 1024);
  CHECK(sc.fps == 30.0);
  CHECK(sc.mapping.p_roi == 0.0);
  CHECK(sc.mapping.p_nonroi == 0.8);
  CHECK(sc.mapping.qth_low == 10);
  CHECK(sc.mapping.qth_high == 40);
  CHECK(sc.edca.retry_limit == 4);
  CHECK(sc.edca.ac[2].aifsn == 3);
  CHECK(sc.channel.kind == "bernoulli");
  CHECK(sc.validate().empty());
}

TEST_CASE("full scenario round trip including cross traffic tables") {
  const auto path = write_temp("roisim_full.toml",
                               "trace = \"" + temp_trace().string() + "\"\n" +
                                   R"(strategies = ["edca", "uniform", "roi"]
seeds = [1, 2, 3]
duration_s = 4.0   # with a trailing comment
playout_deadline_ms = 250

[video]
mtu = 512
fps = 10.0

[mapping]
p_roi = 0.1
p_nonroi = 0.9
qth_low = 5
qth_high = 20
uniform_p = 0.5

[mac]
phy_rate_bps = 12000000
retry_limit = 7
aifsn = [9, 6, 3, 2]
queue_capacity = [20, 20, 25, 20]

[channel]
kind = "gilbert_elliott"
p_g2b = 0.01
p_b2g = 0.2
loss_good = 0.02
loss_bad = 0.95

[[cross_traffic]]
ac = "AC3"
packet_size_bytes = 200
rate_bps = 64000
jitter = 0.2

[[cross_traffic]]
ac = "AC1"
packet_size_bytes = 512
rate_bps = 300000
jitter = 0.1
)");
  const auto sc = Scenario::load(path);
  CHECK(sc.seeds.size() == 3);
  CHECK(sc.duration_s == 4.0);
  CHECK(sc.playout_deadline_ms == 250.0);
  CHECK(sc.mtu == 512);
  CHECK(sc.mapping.qth_high == 20);
  CHECK(sc.uniform_p == 0.5);
  CHECK(sc.edca.phy_rate_bps == 12'000'000);
  CHECK(sc.edca.retry_limit == 7);
  CHECK(sc.edca.ac[2].queue_capacity == 25);
  CHECK(sc.channel.kind == "gilbert_elliott");
  CHECK(sc.channel.loss_bad == 0.95);
  REQUIRE(sc.cross_traffic.size() == 2);
  CHECK(sc.cross_traffic[0].target_ac == AcIndex::AC3_Voice);
  CHECK(sc.cross_traffic[1].target_ac == AcIndex::AC1_BestEffort);
  CHECK(sc.cross_traffic[1].rate_bps == 300'000.0);
  CHECK(sc.validate().empty());
}

TEST_CASE("misordered thresholds fail validation") {
  const auto path = write_temp("roisim_badthresh.toml",
                               "trace = \"" + temp_trace().string() + "\"\n" +
                                   "[mapping]\nqth_low = 40\nqth_high = 10\n");
  const auto sc = Scenario::load(path);
  const auto errors = sc.validate();
  REQUIRE_FALSE(errors.empty());
  bool found = false;
  for (const auto& e : errors) found = found || e.find("qth_low") != std::string::npos;
  CHECK(found);
}

TEST_CASE("missing trace file is reported with its path") {
  const auto path = write_temp("roisim_notrace.toml", "trace = \"/no/such/trace.csv\"\n");
  const auto sc = Scenario::load(path);
  const auto errors = sc.validate();
  REQUIRE_FALSE(errors.empty());
  CHECK(errors[0].find("/no/such/trace.csv") != std::string::npos);
}

TEST_CASE("validation reports every violation at once") {
  const auto path = write_temp("roisim_manybad.toml",
                               "trace = \"/no/such/trace.csv\"\n"
                               "strategies = [\"warp\"]\n"
                               "seeds = []\n"
                               "duration_s = -1\n"
                               "[mapping]\nqth_low = 40\nqth_high = 10\n");
  const auto sc = Scenario::load(path);
  CHECK(sc.validate().size() >= 4);
  CHECK_THROWS(sc.validate_or_throw());
}

TEST_CASE("unknown keys and malformed lines are parse errors") {
  const auto bad_key = write_temp("roisim_badkey.toml",
                                  "trace = \"x.csv\"\nwarp_speed = 9\n");
  CHECK_THROWS_WITH_AS(Scenario::load(bad_key), doctest::Contains("warp_speed"),
                       std::runtime_error);
  const auto bad_line = write_temp("roisim_badline.toml", "trace\n");
  CHECK_THROWS_WITH_AS(Scenario::load(bad_line), doctest::Contains("line 1"), std::runtime_error);
  CHECK_THROWS(Scenario::load("/no/such/scenario.toml"));
}

TEST_CASE("relative trace paths resolve against the scenario file") {
  const auto dir = std::filesystem::temp_directory_path();
  TraceGenConfig cfg;
  cfg.frames = 10;
  cfg.roi_packet_total = 40;
  cfg.nonroi_packet_total = 100;
  write_video_trace(generate_reference_trace(cfg), dir / "roisim_rel_trace.csv");
  const auto path = write_temp("roisim_rel.toml",
                               "trace = \"roisim_rel_trace.csv\"\nduration_s = 1.0\n");
  const auto sc = Scenario::load(path);
  CHECK(sc.trace_path == dir / "roisim_rel_trace.csv");
  CHECK(sc.validate().empty());
}

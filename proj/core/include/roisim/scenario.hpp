#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "roisim/mac/channel.hpp"
#include "roisim/mac/edca.hpp"
#include "roisim/mapper/mapping.hpp"
#include "roisim/traffic/cross_traffic.hpp"

namespace roisim {

struct ChannelConfig {
  std::string kind = "bernoulli";  // "bernoulli" or "gilbert_elliott"
  double p_loss = 0.0;
  double p_g2b = 0.0;
  double p_b2g = 1.0;
  double loss_good = 0.0;
  double loss_bad = 1.0;

  ChannelModel build() const;
};

// One experiment description: which trace, which strategies and seeds, and
// every MAC/channel/traffic knob. Defaults follow the reference setup
// (MTU 1024, 30 fps, p_roi 0, p_nonroi 0.8).
struct Scenario {
  std::filesystem::path trace_path;
  std::vector<std::string> strategies = {"edca", "uniform", "roi"};
  std::vector<std::uint64_t> seeds = {1};
  double duration_s = 12.0;
  std::filesystem::path out_dir;  // optional; the CLI --out flag overrides
  double playout_deadline_ms = 0.0;  // <= 0: disabled, deliveries count until sim end

  std::int32_t mtu = 1024;
  double fps = 30.0;

  MappingConfig mapping;
  double uniform_p = 0.8;

  EdcaParams edca;
  ChannelConfig channel;
  std::vector<CrossTrafficConfig> cross_traffic;

  // Parses the scenario file (flat TOML subset: scalar keys, [section]
  // headers, scalar arrays, [[cross_traffic]] tables). Unknown keys are
  // errors. Throws std::runtime_error with the offending key path.
  static Scenario load(const std::filesystem::path& path);

  // Semantic validation; returns every violation, empty when valid.
  // Reads the trace file to check duration coverage.
  std::vector<std::string> validate() const;

  // validate() that throws listing all violations.
  void validate_or_throw() const;
};

}  // namespace roisim

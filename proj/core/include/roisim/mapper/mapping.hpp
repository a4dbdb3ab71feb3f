#pragma once

#include <string>
#include <string_view>

#include "roisim/sim/rng.hpp"
#include "roisim/types.hpp"

namespace roisim {

// Knobs of the adaptive packet-to-AC mapping. The per-region demotion
// probability grows linearly with the AC2 queue length between the two
// thresholds, RED-style.
struct MappingConfig {
  double p_roi = 0.0;
  double p_nonroi = 0.8;
  int qth_low = 10;
  int qth_high = 40;

  // Throws std::invalid_argument on misordered thresholds or bad probabilities.
  void validate(int ac2_capacity) const;
};

enum class MapStrategy { StaticEdca, UniformAdaptive, RoiAdaptive };

const char* to_string(MapStrategy s);
MapStrategy strategy_from_string(std::string_view name);

// Audit record for one mapping decision.
struct AcDecision {
  AcIndex chosen_ac = AcIndex::AC2_Video;
  double p_new_used = 0.0;
  int qlen_seen = 0;
  bool consumed_draw = false;
};

// Demotion probability for the current queue state:
//   p_region * (qlen - qth_low) / (qth_high - qth_low), clamped to [0, 1].
// The raw ratio exceeds 1 for qlen far above qth_high; clamping keeps a
// valid probability while preserving the increasingly aggressive demotion.
double compute_p_new(double p_region, int qlen, int qth_low, int qth_high);

class PacketMapper {
 public:
  PacketMapper(MapStrategy strategy, MappingConfig config, double uniform_p);

  // Factory used by scenario loading; validates config against the AC2
  // queue capacity. name is one of "edca", "uniform", "roi".
  static PacketMapper make(std::string_view name, const MappingConfig& config, double uniform_p,
                           int ac2_capacity);

  // Picks the AC for one video packet given the AC2 queue length sampled at
  // the instant of mapping. Branches:
  //   (a) qlen <= qth_low            -> AC2, no draw
  //   (b) qth_low < qlen <= qth_high -> AC1 with prob p_new, else AC2
  //   (c) qlen > qth_high            -> AC0 with prob p_new, else AC1
  // StaticEdca always returns AC2 and never touches the RNG. UniformAdaptive
  // runs the same branches with uniform_p for both regions.
  AcDecision map_packet(Region region, int qlen, RngStream& rng) const;

  MapStrategy strategy() const { return strategy_; }
  const MappingConfig& config() const { return config_; }
  double uniform_p() const { return uniform_p_; }

 private:
  MapStrategy strategy_;
  MappingConfig config_;
  double uniform_p_;
};

}  // namespace roisim

#include "roisim/mapper/mapping.hpp"

#include <algorithm>
#include <stdexcept>

namespace roisim {

void MappingConfig::validate(int ac2_capacity) const {
  auto fail = [](const std::string& msg) { throw std::invalid_argument("mapping config: " + msg); };
  if (p_roi < 0.0 || p_roi > 1.0) fail("p_roi must be in [0,1]");
  if (p_nonroi < 0.0 || p_nonroi > 1.0) fail("p_nonroi must be in [0,1]");
  if (p_roi > p_nonroi) fail("p_roi must not exceed p_nonroi");
  if (qth_low < 0) fail("qth_low must be >= 0");
  if (qth_low >= qth_high) {
    fail("qth_low (" + std::to_string(qth_low) + ") must be < qth_high (" +
         std::to_string(qth_high) + ")");
  }
  if (qth_high > ac2_capacity) {
    fail("qth_high (" + std::to_string(qth_high) + ") exceeds AC2 queue capacity (" +
         std::to_string(ac2_capacity) + ")");
  }
}

const char* to_string(MapStrategy s) {
  switch (s) {
    case MapStrategy::StaticEdca: return "edca";
    case MapStrategy::UniformAdaptive: return "uniform";
    case MapStrategy::RoiAdaptive: return "roi";
  }
  return "?";
}

MapStrategy strategy_from_string(std::string_view name) {
  if (name == "edca") return MapStrategy::StaticEdca;
  if (name == "uniform") return MapStrategy::UniformAdaptive;
  if (name == "roi") return MapStrategy::RoiAdaptive;
  throw std::invalid_argument("unknown mapping strategy '" + std::string(name) +
                              "' (expected edca, uniform or roi)");
}

double compute_p_new(double p_region, int qlen, int qth_low, int qth_high) {
  const double raw = p_region * static_cast<double>(qlen - qth_low) /
                     static_cast<double>(qth_high - qth_low);
  return std::clamp(raw, 0.0, 1.0);
}

PacketMapper::PacketMapper(MapStrategy strategy, MappingConfig config, double uniform_p)
    : strategy_(strategy), config_(config), uniform_p_(uniform_p) {}

PacketMapper PacketMapper::make(std::string_view name, const MappingConfig& config,
                                double uniform_p, int ac2_capacity) {
  const MapStrategy strategy = strategy_from_string(name);
  if (strategy != MapStrategy::StaticEdca) {
    config.validate(ac2_capacity);
  }
  if (strategy == MapStrategy::UniformAdaptive && (uniform_p < 0.0 || uniform_p > 1.0)) {
    throw std::invalid_argument("uniform_p must be in [0,1]");
  }
  return PacketMapper(strategy, config, uniform_p);
}

AcDecision PacketMapper::map_packet(Region region, int qlen, RngStream& rng) const {
  AcDecision d;
  d.qlen_seen = qlen;

  if (strategy_ == MapStrategy::StaticEdca) {
    d.chosen_ac = AcIndex::AC2_Video;
    return d;
  }

  const double p_region = strategy_ == MapStrategy::UniformAdaptive
                              ? uniform_p_
                              : (region == Region::ROI ? config_.p_roi : config_.p_nonroi);

  if (qlen <= config_.qth_low) {
    d.chosen_ac = AcIndex::AC2_Video;
    return d;
  }

  d.p_new_used = compute_p_new(p_region, qlen, config_.qth_low, config_.qth_high);
  d.consumed_draw = true;
  const bool demote = rng.uniform01() < d.p_new_used;
  if (qlen <= config_.qth_high) {
    d.chosen_ac = demote ? AcIndex::AC1_BestEffort : AcIndex::AC2_Video;
  } else {
    d.chosen_ac = demote ? AcIndex::AC0_Background : AcIndex::AC1_BestEffort;
  }
  return d;
}

}  // namespace roisim

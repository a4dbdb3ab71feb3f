#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace roisim {

enum class Region : std::uint8_t { ROI = 0, NonROI = 1 };

inline const char* to_string(Region r) { return r == Region::ROI ? "ROI" : "NONROI"; }

inline Region region_from_string(std::string_view s) {
  if (s == "ROI") return Region::ROI;
  if (s == "NONROI" || s == "NonROI" || s == "NON-ROI") return Region::NonROI;
  throw std::invalid_argument("unknown region '" + std::string(s) + "' (expected ROI or NONROI)");
}

// EDCA access categories, 802.11 numbering: higher index = higher priority.
enum class AcIndex : std::uint8_t {
  AC0_Background = 0,
  AC1_BestEffort = 1,
  AC2_Video = 2,
  AC3_Voice = 3,
};

constexpr int kAcCount = 4;

inline const char* to_string(AcIndex ac) {
  switch (ac) {
    case AcIndex::AC0_Background: return "AC0";
    case AcIndex::AC1_BestEffort: return "AC1";
    case AcIndex::AC2_Video: return "AC2";
    case AcIndex::AC3_Voice: return "AC3";
  }
  return "AC?";
}

inline AcIndex ac_from_string(std::string_view s) {
  if (s == "AC0" || s == "ac0") return AcIndex::AC0_Background;
  if (s == "AC1" || s == "ac1") return AcIndex::AC1_BestEffort;
  if (s == "AC2" || s == "ac2") return AcIndex::AC2_Video;
  if (s == "AC3" || s == "ac3") return AcIndex::AC3_Voice;
  throw std::invalid_argument("unknown access category '" + std::string(s) + "'");
}

}  // namespace roisim

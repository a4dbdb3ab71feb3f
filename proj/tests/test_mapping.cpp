#include <doctest.h>

#include <array>
#include <stdexcept>

#include "roisim/mapper/mapping.hpp"

using namespace roisim;

TEST_CASE("p_new follows the linear ramp between the thresholds") {
  CHECK(compute_p_new(0.8, 10, 10, 40) == doctest::Approx(0.0));
  CHECK(compute_p_new(0.8, 25, 10, 40) == doctest::Approx(0.4));
  CHECK(compute_p_new(0.0, 35, 10, 40) == doctest::Approx(0.0));
  // Raw value 0.8 * 45/30 = 1.2 clamps to a valid probability.
  CHECK(compute_p_new(0.8, 55, 10, 40) == doctest::Approx(1.0));
  CHECK(compute_p_new(0.8, 41, 10, 40) == doctest::Approx(0.8 * 31.0 / 30.0));
  // Below qth_low the ramp is negative and clamps to zero.
  CHECK(compute_p_new(0.8, 5, 10, 40) == doctest::Approx(0.0));
}

TEST_CASE("p_new is non-decreasing in qlen for any region probability") {
  for (const double p : {0.0, 0.3, 0.8, 1.0}) {
    double prev = -1.0;
    for (int qlen = 0; qlen <= 60; ++qlen) {
      const double v = compute_p_new(p, qlen, 10, 40);
      CHECK(v >= prev);
      prev = v;
    }
  }
}

namespace {
PacketMapper roi_mapper() {
  MappingConfig cfg;
  cfg.p_roi = 0.0;
  cfg.p_nonroi = 0.8;
  cfg.qth_low = 10;
  cfg.qth_high = 40;
  return PacketMapper::make("roi", cfg, 0.8, 50);
}
}  // namespace

TEST_CASE("below qth_low every packet stays in AC2 without a draw") {
  const auto mapper = roi_mapper();
  RngStream rng(1, "mapper");
  for (int i = 0; i < 100; ++i) {
    const auto d = mapper.map_packet(i % 2 == 0 ? Region::ROI : Region::NonROI, 5, rng);
    CHECK(d.chosen_ac == AcIndex::AC2_Video);
    CHECK_FALSE(d.consumed_draw);
  }
  // No draw was consumed: the stream replays from the start.
  RngStream fresh(1, "mapper");
  CHECK(rng.uniform01() == fresh.uniform01());
}

TEST_CASE("qlen equal to qth_low still takes the all-AC2 branch") {
  const auto mapper = roi_mapper();
  RngStream rng(1, "mapper");
  const auto d = mapper.map_packet(Region::NonROI, 10, rng);
  CHECK(d.chosen_ac == AcIndex::AC2_Video);
  CHECK_FALSE(d.consumed_draw);
}

TEST_CASE("ROI packets with p_roi zero never leave AC2 in the middle band") {
  const auto mapper = roi_mapper();
  RngStream rng(3, "mapper");
  for (int qlen = 11; qlen <= 40; ++qlen) {
    const auto d = mapper.map_packet(Region::ROI, qlen, rng);
    CHECK(d.chosen_ac == AcIndex::AC2_Video);
    CHECK(d.p_new_used == doctest::Approx(0.0));
  }
}

TEST_CASE("middle band splits non-ROI packets between AC1 and AC2 at p_new") {
  const auto mapper = roi_mapper();
  RngStream rng(99, "mapper");
  const int n = 100'000;
  int ac1 = 0;
  for (int i = 0; i < n; ++i) {
    const auto d = mapper.map_packet(Region::NonROI, 25, rng);
    REQUIRE((d.chosen_ac == AcIndex::AC1_BestEffort || d.chosen_ac == AcIndex::AC2_Video));
    if (d.chosen_ac == AcIndex::AC1_BestEffort) ++ac1;
  }
  CHECK(static_cast<double>(ac1) / n == doctest::Approx(0.4).epsilon(0.025));
}

TEST_CASE("above qth_high packets split between AC0 and AC1, never AC2") {
  const auto mapper = roi_mapper();
  RngStream rng(41, "mapper");
  const int n = 100'000;
  int ac0 = 0;
  for (int i = 0; i < n; ++i) {
    const auto d = mapper.map_packet(Region::NonROI, 41, rng);
    REQUIRE((d.chosen_ac == AcIndex::AC0_Background || d.chosen_ac == AcIndex::AC1_BestEffort));
    if (d.chosen_ac == AcIndex::AC0_Background) ++ac0;
  }
  CHECK(static_cast<double>(ac0) / n == doctest::Approx(0.8 * 31.0 / 30.0).epsilon(0.02));
}

TEST_CASE("deep congestion with p_region zero evacuates to AC1 deterministically") {
  const auto mapper = roi_mapper();
  RngStream rng(2, "mapper");
  const auto d = mapper.map_packet(Region::ROI, 45, rng);
  CHECK(d.chosen_ac == AcIndex::AC1_BestEffort);
  CHECK(d.p_new_used == doctest::Approx(0.0));
}

TEST_CASE("static EDCA maps everything to AC2 and consumes zero draws") {
  const auto mapper = PacketMapper::make("edca", MappingConfig{}, 0.8, 50);
  RngStream rng(5, "mapper");
  for (const int qlen : {0, 15, 45, 50}) {
    for (const Region r : {Region::ROI, Region::NonROI}) {
      const auto d = mapper.map_packet(r, qlen, rng);
      CHECK(d.chosen_ac == AcIndex::AC2_Video);
      CHECK_FALSE(d.consumed_draw);
    }
  }
  RngStream fresh(5, "mapper");
  CHECK(rng.uniform01() == fresh.uniform01());
}

TEST_CASE("uniform adaptive uses one probability for both regions") {
  const auto mapper = PacketMapper::make("uniform", MappingConfig{}, 0.8, 50);
  RngStream roi_rng(11, "a");
  RngStream nonroi_rng(11, "a");
  for (int i = 0; i < 1000; ++i) {
    const auto d1 = mapper.map_packet(Region::ROI, 25, roi_rng);
    const auto d2 = mapper.map_packet(Region::NonROI, 25, nonroi_rng);
    CHECK(d1.chosen_ac == d2.chosen_ac);
    CHECK(d1.p_new_used == doctest::Approx(0.8 * 15.0 / 30.0));
  }
}

TEST_CASE("at every qlen the ROI keeps AC2 at least as often as the non-ROI") {
  // Analytic dominance: P(AC2 | ROI) >= P(AC2 | non-ROI) follows from
  // p_roi <= p_nonroi in branches (a) and (b); above qth_high neither
  // region uses AC2.
  MappingConfig cfg;
  cfg.p_roi = 0.25;
  cfg.p_nonroi = 0.9;
  cfg.qth_low = 5;
  cfg.qth_high = 30;
  for (int qlen = 0; qlen <= 50; ++qlen) {
    const auto p_ac2 = [&](double p_region) {
      if (qlen <= cfg.qth_low) return 1.0;
      if (qlen <= cfg.qth_high) return 1.0 - compute_p_new(p_region, qlen, cfg.qth_low, cfg.qth_high);
      return 0.0;
    };
    CHECK(p_ac2(cfg.p_roi) >= p_ac2(cfg.p_nonroi));
  }
}

TEST_CASE("strategy factory rejects unknown names and bad configs") {
  CHECK_THROWS_AS(PacketMapper::make("fancy", MappingConfig{}, 0.8, 50), std::invalid_argument);
  MappingConfig bad;
  bad.qth_low = 40;
  bad.qth_high = 10;
  CHECK_THROWS_AS(PacketMapper::make("roi", bad, 0.8, 50), std::invalid_argument);
  MappingConfig above_cap;
  above_cap.qth_high = 60;
  CHECK_THROWS_AS(PacketMapper::make("roi", above_cap, 0.8, 50), std::invalid_argument);
  // Static EDCA ignores the config entirely.
  CHECK(PacketMapper::make("edca", bad, 0.8, 50).strategy() == MapStrategy::StaticEdca);
}

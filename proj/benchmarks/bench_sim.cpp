#include <benchmark/benchmark.h>

#include "roisim/mac/edca.hpp"
#include "roisim/mapper/mapping.hpp"
#include "roisim/sim/event_queue.hpp"

namespace {

using namespace roisim;

void BM_EventQueueScheduleDispatch(benchmark::State& state) {
  const auto n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    EventQueue q;
    int fired = 0;
    for (int i = 0; i < n; ++i) {
      q.schedule((i * 7919) % 100'000, [&fired] { ++fired; });
    }
    q.run_until(100'000);
    benchmark::DoNotOptimize(fired);
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_EventQueueScheduleDispatch)->Arg(1'000)->Arg(100'000);

void BM_MapperDecision(benchmark::State& state) {
  MappingConfig cfg;
  cfg.p_nonroi = 0.8;
  const auto mapper = PacketMapper::make("roi", cfg, 0.8, 50);
  RngStream rng(1, "mapper");
  int qlen = 0;
  for (auto _ : state) {
    const auto d = mapper.map_packet(Region::NonROI, qlen, rng);
    benchmark::DoNotOptimize(d);
    qlen = (qlen + 1) % 50;
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_MapperDecision);

// One simulated second of a fully saturated four-AC station.
void BM_SaturatedMacSecond(benchmark::State& state) {
  for (auto _ : state) {
    EventQueue engine;
    EdcaParams params;
    params.overhead_us = 30;
    params.phy_rate_bps = 24'000'000;
    EdcaMac mac(engine, params, ChannelModel::bernoulli(0.0), RngStream(1, "backoff"),
                RngStream(1, "channel"));
    mac.set_packet_log_enabled(false);
    std::uint64_t id = 0;
    const auto refill = [&] {
      for (int ac = 0; ac < kAcCount; ++ac) {
        while (mac.snapshot_qlen(static_cast<AcIndex>(ac)) < 40) {
          MacPacket p;
          p.id = id++;
          p.size_bytes = 300;
          mac.enqueue(std::move(p), static_cast<AcIndex>(ac));
        }
      }
    };
    refill();
    for (SimTime t = 0; t < 1'000'000; t += 10'000) engine.schedule(t, refill);
    engine.run_until(1'000'000);
    std::uint64_t tx = 0;
    for (int ac = 0; ac < kAcCount; ++ac) tx += mac.stats().ac[ac].tx_success;
    benchmark::DoNotOptimize(tx);
    state.counters["tx_per_simsec"] = static_cast<double>(tx);
  }
}
BENCHMARK(BM_SaturatedMacSecond)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

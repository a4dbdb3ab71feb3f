#pragma once

#include <array>
#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <vector>

#include "roisim/mac/channel.hpp"
#include "roisim/sim/event_queue.hpp"
#include "roisim/sim/rng.hpp"
#include "roisim/traffic/video_packet.hpp"
#include "roisim/types.hpp"

namespace roisim {

// Contention parameters of one access category.
struct AcParams {
  int aifsn = 2;
  int cw_min = 3;
  int cw_max = 7;
  int queue_capacity = 50;
};

// 802.11p OCB profile defaults. Higher-priority ACs get strictly smaller
// AIFSN and CW bounds.
struct EdcaParams {
  std::array<AcParams, kAcCount> ac = {
      AcParams{9, 15, 1023, 50},  // AC0 Background
      AcParams{6, 15, 1023, 50},  // AC1 Best Effort
      AcParams{3, 7, 15, 50},     // AC2 Video
      AcParams{2, 3, 7, 50},      // AC3 Voice
  };
  SimTime slot_us = 13;
  SimTime sifs_us = 32;
  std::int64_t phy_rate_bps = 6'000'000;
  // Per-attempt framing + ACK exchange, folded into one constant.
  SimTime overhead_us = 100;
  int retry_limit = 4;  // 0 disables retransmission

  void validate() const;
};

// The unit the MAC queues and transmits. Cross-traffic packets carry no
// video tag.
struct MacPacket {
  std::uint64_t id = 0;
  std::int32_t size_bytes = 0;
  SimTime created_at = 0;
  std::optional<VideoPacket> video;
};

enum class PacketOutcome : std::uint8_t { Delivered, TailDrop, RetryExpired, PendingAtEnd };

const char* to_string(PacketOutcome o);

struct PacketLogEntry {
  std::uint64_t packet_id = 0;
  AcIndex ac = AcIndex::AC2_Video;
  SimTime enqueue_us = 0;
  PacketOutcome outcome = PacketOutcome::Delivered;
  SimTime dequeue_us = -1;  // -1 when the packet never left the queue
  int retries = 0;
};

struct AcCounters {
  std::uint64_t enqueued = 0;
  std::uint64_t tail_dropped = 0;
  std::uint64_t tx_success = 0;
  std::uint64_t tx_failed_retry_exhausted = 0;
  std::uint64_t delivered_bytes = 0;
  // Head-of-line access delay, sampled on successful transmissions.
  double hol_delay_sum_us = 0.0;
  std::uint64_t hol_delay_samples = 0;

  double mean_hol_delay_us() const {
    return hol_delay_samples == 0 ? 0.0 : hol_delay_sum_us / static_cast<double>(hol_delay_samples);
  }
};

struct MacStats {
  std::array<AcCounters, kAcCount> ac;
  std::vector<PacketLogEntry> packet_log;

  const AcCounters& of(AcIndex i) const { return ac[static_cast<int>(i)]; }
};

// Single-station EDCA model: four prioritized FIFO queues contend through
// per-slot AIFS/backoff countdown; simultaneous zero-backoff ACs resolve by
// internal (virtual) collision, the highest priority transmitting while each
// loser doubles its CW and redraws. Transmission outcomes come from the
// lossy channel; losses retry up to retry_limit with CW doubling.
class EdcaMac {
 public:
  using DeliveryHandler = std::function<void(const MacPacket&, SimTime delivered_at)>;

  EdcaMac(EventQueue& engine, EdcaParams params, ChannelModel channel, RngStream backoff_rng,
          RngStream channel_rng);

  void set_delivery_handler(DeliveryHandler handler) { on_delivery_ = std::move(handler); }
  void set_packet_log_enabled(bool enabled) { log_enabled_ = enabled; }

  // Appends to the AC's FIFO, or tail-drops when the queue is at capacity.
  // Returns true if accepted. Drop is an outcome, not an error.
  bool enqueue(MacPacket packet, AcIndex ac);

  // Current queue occupancy in packets, the mapper's qlen observable.
  int snapshot_qlen(AcIndex ac) const { return static_cast<int>(acs_[static_cast<int>(ac)].fifo.size()); }

  // Records PENDING_AT_END log entries for everything still queued. Call
  // once after the run; enqueue afterwards is a contract violation.
  void finalize();

  const MacStats& stats() const { return stats_; }
  const EdcaParams& params() const { return params_; }
  const ChannelModel& channel() const { return channel_; }
  std::uint64_t still_pending(AcIndex ac) const { return acs_[static_cast<int>(ac)].fifo.size(); }

  // enqueued == tail_dropped + tx_success + retry_expired + still_pending
  bool conservation_holds() const;

 private:
  struct QueuedPacket {
    MacPacket pkt;
    SimTime enqueued_at = 0;
  };

  struct AcState {
    AcParams params;
    std::deque<QueuedPacket> fifo;
    int cw_current = 0;
    int backoff = 0;
    int aifs_remaining = 0;
    int head_attempts = 0;
    SimTime head_since = 0;
  };

  void ensure_slot_scheduled();
  void on_slot();
  void start_transmission(int ac);
  void on_tx_end(int ac);
  void setup_new_head(int ac);
  void resolve_head(int ac, PacketOutcome outcome, int retries);
  SimTime airtime_us(std::int32_t size_bytes) const;
  bool any_pending() const;
  void log_entry(const MacPacket& p, AcIndex ac, SimTime enq, PacketOutcome outcome, SimTime deq,
                 int retries);

  EventQueue& engine_;
  EdcaParams params_;
  ChannelModel channel_;
  RngStream backoff_rng_;
  RngStream channel_rng_;
  DeliveryHandler on_delivery_;

  std::array<AcState, kAcCount> acs_;
  MacStats stats_;
  bool medium_busy_ = false;
  bool slot_scheduled_ = false;
  bool finalized_ = false;
  bool log_enabled_ = true;
};

}  // namespace roisim

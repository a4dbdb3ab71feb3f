#include "roisim/mac/edca.hpp"

#include <algorithm>
#include <stdexcept>

namespace roisim {

void EdcaParams::validate() const {
  auto fail = [](const std::string& msg) { throw std::invalid_argument("edca params: " + msg); };
  for (int i = 0; i < kAcCount; ++i) {
    const auto& a = ac[i];
    if (a.aifsn < 1) fail("aifsn must be >= 1");
    if (a.cw_min < 0 || a.cw_min > a.cw_max) fail("cw_min must be in [0, cw_max]");
    if (a.queue_capacity < 1) fail("queue_capacity must be >= 1");
  }
  // Strict priority ladder: AC3 ahead of AC2 ahead of AC1 ahead of AC0.
  for (int hi = 1; hi < kAcCount; ++hi) {
    if (ac[hi].aifsn > ac[hi - 1].aifsn || ac[hi].cw_min > ac[hi - 1].cw_min) {
      fail("AC" + std::to_string(hi) + " must not have larger aifsn/cw_min than AC" +
           std::to_string(hi - 1));
    }
  }
  if (slot_us < 1) fail("slot_us must be >= 1");
  if (phy_rate_bps < 1) fail("phy_rate_bps must be >= 1");
  if (overhead_us < 0) fail("overhead_us must be >= 0");
  if (retry_limit < 0) fail("retry_limit must be >= 0");
}

const char* to_string(PacketOutcome o) {
  switch (o) {
    case PacketOutcome::Delivered: return "DELIVERED";
    case PacketOutcome::TailDrop: return "TAIL_DROP";
    case PacketOutcome::RetryExpired: return "RETRY_EXPIRED";
    case PacketOutcome::PendingAtEnd: return "PENDING_AT_END";
  }
  return "?";
}

EdcaMac::EdcaMac(EventQueue& engine, EdcaParams params, ChannelModel channel,
                 RngStream backoff_rng, RngStream channel_rng)
    : engine_(engine),
      params_(params),
      channel_(channel),
      backoff_rng_(std::move(backoff_rng)),
      channel_rng_(std::move(channel_rng)) {
  params_.validate();
  for (int i = 0; i < kAcCount; ++i) {
    acs_[i].params = params_.ac[i];
    acs_[i].cw_current = params_.ac[i].cw_min;
  }
}

SimTime EdcaMac::airtime_us(std::int32_t size_bytes) const {
  const std::int64_t bits = 8LL * size_bytes;
  const std::int64_t tx_us = (bits * 1'000'000 + params_.phy_rate_bps - 1) / params_.phy_rate_bps;
  return params_.overhead_us + tx_us;
}

bool EdcaMac::any_pending() const {
  for (const auto& s : acs_) {
    if (!s.fifo.empty()) return true;
  }
  return false;
}

void EdcaMac::log_entry(const MacPacket& p, AcIndex ac, SimTime enq, PacketOutcome outcome,
                        SimTime deq, int retries) {
  if (!log_enabled_) return;
  stats_.packet_log.push_back(PacketLogEntry{p.id, ac, enq, outcome, deq, retries});
}

bool EdcaMac::enqueue(MacPacket packet, AcIndex ac) {
  if (finalized_) throw std::logic_error("EdcaMac::enqueue after finalize");
  auto& st = acs_[static_cast<int>(ac)];
  auto& ctr = stats_.ac[static_cast<int>(ac)];
  ++ctr.enqueued;
  if (static_cast<int>(st.fifo.size()) >= st.params.queue_capacity) {
    ++ctr.tail_dropped;
    log_entry(packet, ac, engine_.now(), PacketOutcome::TailDrop, engine_.now(), 0);
    return false;
  }
  st.fifo.push_back(QueuedPacket{std::move(packet), engine_.now()});
  if (st.fifo.size() == 1) {
    // Queue was empty: this packet is the new head and the AC (re)joins
    // contention with a fresh AIFS wait.
    st.head_attempts = 0;
    st.head_since = engine_.now();
    st.backoff = static_cast<int>(backoff_rng_.uniform_int(static_cast<std::uint64_t>(st.cw_current)));
    st.aifs_remaining = st.params.aifsn;
  }
  ensure_slot_scheduled();
  return true;
}

void EdcaMac::ensure_slot_scheduled() {
  if (slot_scheduled_ || medium_busy_ || !any_pending()) return;
  slot_scheduled_ = true;
  engine_.schedule_in(params_.slot_us, [this] {
    slot_scheduled_ = false;
    on_slot();
  });
}

void EdcaMac::on_slot() {
  if (medium_busy_) return;

  // AIFS countdown gates the backoff countdown; both advance one slot at a
  // time. An AC whose AIFS completes this slot starts decrementing backoff
  // on the next one.
  for (auto& st : acs_) {
    if (st.fifo.empty()) continue;
    if (st.aifs_remaining > 0) {
      --st.aifs_remaining;
    } else if (st.backoff > 0) {
      --st.backoff;
    }
  }

  // Contenders have exhausted AIFS and backoff. Highest priority wins the
  // virtual collision; each loser doubles CW and redraws.
  int winner = -1;
  for (int i = kAcCount - 1; i >= 0; --i) {
    auto& st = acs_[i];
    if (st.fifo.empty() || st.aifs_remaining > 0 || st.backoff > 0) continue;
    if (winner < 0) {
      winner = i;
    } else {
      st.cw_current = std::min(2 * st.cw_current + 1, st.params.cw_max);
      st.backoff =
          static_cast<int>(backoff_rng_.uniform_int(static_cast<std::uint64_t>(st.cw_current)));
    }
  }

  if (winner < 0) {
    ensure_slot_scheduled();
    return;
  }
  start_transmission(winner);
}

void EdcaMac::start_transmission(int ac) {
  medium_busy_ = true;
  const auto& head = acs_[ac].fifo.front();
  engine_.schedule_in(airtime_us(head.pkt.size_bytes), [this, ac] { on_tx_end(ac); });
}

void EdcaMac::setup_new_head(int ac) {
  auto& st = acs_[ac];
  st.head_attempts = 0;
  if (!st.fifo.empty()) {
    st.head_since = engine_.now();
    st.backoff = static_cast<int>(backoff_rng_.uniform_int(static_cast<std::uint64_t>(st.cw_current)));
  }
}

void EdcaMac::resolve_head(int ac, PacketOutcome outcome, int retries) {
  auto& st = acs_[ac];
  auto& ctr = stats_.ac[ac];
  QueuedPacket qp = std::move(st.fifo.front());
  st.fifo.pop_front();
  log_entry(qp.pkt, static_cast<AcIndex>(ac), qp.enqueued_at, outcome, engine_.now(), retries);
  if (outcome == PacketOutcome::Delivered) {
    ++ctr.tx_success;
    ctr.delivered_bytes += static_cast<std::uint64_t>(qp.pkt.size_bytes);
    ctr.hol_delay_sum_us += static_cast<double>(engine_.now() - st.head_since);
    ++ctr.hol_delay_samples;
    if (on_delivery_) on_delivery_(qp.pkt, engine_.now());
  } else {
    ++ctr.tx_failed_retry_exhausted;
  }
  st.cw_current = st.params.cw_min;
  setup_new_head(ac);
}

void EdcaMac::on_tx_end(int ac) {
  auto& st = acs_[ac];
  const bool lost = channel_.attempt_lost(channel_rng_);
  ++st.head_attempts;

  if (!lost) {
    resolve_head(ac, PacketOutcome::Delivered, st.head_attempts - 1);
  } else if (st.head_attempts > params_.retry_limit) {
    resolve_head(ac, PacketOutcome::RetryExpired, st.head_attempts - 1);
  } else {
    // Retry with doubled CW and a fresh backoff.
    st.cw_current = std::min(2 * st.cw_current + 1, st.params.cw_max);
    st.backoff = static_cast<int>(backoff_rng_.uniform_int(static_cast<std::uint64_t>(st.cw_current)));
  }

  medium_busy_ = false;
  // Busy period over: every waiting AC observes a fresh AIFS.
  for (auto& other : acs_) {
    if (!other.fifo.empty()) other.aifs_remaining = other.params.aifsn;
  }
  ensure_slot_scheduled();
}

void EdcaMac::finalize() {
  if (finalized_) return;
  finalized_ = true;
  for (int i = 0; i < kAcCount; ++i) {
    auto& st = acs_[i];
    bool head = true;
    for (const auto& qp : st.fifo) {
      log_entry(qp.pkt, static_cast<AcIndex>(i), qp.enqueued_at, PacketOutcome::PendingAtEnd, -1,
                head ? st.head_attempts : 0);
      head = false;
    }
  }
}

bool EdcaMac::conservation_holds() const {
  for (int i = 0; i < kAcCount; ++i) {
    const auto& c = stats_.ac[i];
    const std::uint64_t rhs =
        c.tail_dropped + c.tx_success + c.tx_failed_retry_exhausted + acs_[i].fifo.size();
    if (c.enqueued != rhs) return false;
  }
  return true;
}

}  // namespace roisim

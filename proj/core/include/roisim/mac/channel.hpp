#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "roisim/sim/rng.hpp"

namespace roisim {

// Per-attempt packet loss process. Bernoulli draws i.i.d. losses;
// Gilbert-Elliott is a two-state Markov chain (Good/Bad) with per-state loss
// probabilities, stepped once per transmission attempt. Stationary Bad
// probability is p_g2b / (p_g2b + p_b2g).
class ChannelModel {
 public:
  enum class Kind { Bernoulli, GilbertElliott };
  enum class State { Good, Bad };

  static ChannelModel bernoulli(double p_loss);
  static ChannelModel gilbert_elliott(double p_g2b, double p_b2g, double loss_good,
                                      double loss_bad);

  // One transmission attempt: returns true if the packet is lost. Consumes
  // draws from `rng` strictly in attempt order, so the loss pattern seen by
  // attempt #i is identical across runs that share the channel stream.
  bool attempt_lost(RngStream& rng);

  Kind kind() const { return kind_; }
  State state() const { return state_; }
  std::uint64_t attempts() const { return attempts_; }

 private:
  ChannelModel() = default;

  Kind kind_ = Kind::Bernoulli;
  State state_ = State::Good;
  double p_loss_ = 0.0;
  double p_g2b_ = 0.0;
  double p_b2g_ = 0.0;
  double loss_good_ = 0.0;
  double loss_bad_ = 0.0;
  std::uint64_t attempts_ = 0;
};

}  // namespace roisim

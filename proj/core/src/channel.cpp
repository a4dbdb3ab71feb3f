#include "roisim/mac/channel.hpp"

namespace roisim {

namespace {
void check_prob(double p, const char* name) {
  if (p < 0.0 || p > 1.0) {
    throw std::invalid_argument(std::string("channel: ") + name + " must be in [0,1], got " +
                                std::to_string(p));
  }
}
}  // namespace

ChannelModel ChannelModel::bernoulli(double p_loss) {
  check_prob(p_loss, "p_loss");
  ChannelModel c;
  c.kind_ = Kind::Bernoulli;
  c.p_loss_ = p_loss;
  return c;
}

ChannelModel ChannelModel::gilbert_elliott(double p_g2b, double p_b2g, double loss_good,
                                           double loss_bad) {
  check_prob(p_g2b, "p_g2b");
  check_prob(p_b2g, "p_b2g");
  check_prob(loss_good, "loss_good");
  check_prob(loss_bad, "loss_bad");
  ChannelModel c;
  c.kind_ = Kind::GilbertElliott;
  c.p_g2b_ = p_g2b;
  c.p_b2g_ = p_b2g;
  c.loss_good_ = loss_good;
  c.loss_bad_ = loss_bad;
  return c;
}

bool ChannelModel::attempt_lost(RngStream& rng) {
  ++attempts_;
  if (kind_ == Kind::Bernoulli) {
    return rng.bernoulli(p_loss_);
  }
  // Loss is drawn in the current state, then the state steps. Two draws per
  // attempt, always both, to keep the stream aligned with the attempt index.
  const bool lost = rng.bernoulli(state_ == State::Good ? loss_good_ : loss_bad_);
  const bool flip = rng.bernoulli(state_ == State::Good ? p_g2b_ : p_b2g_);
  if (flip) state_ = state_ == State::Good ? State::Bad : State::Good;
  return lost;
}

}  // namespace roisim

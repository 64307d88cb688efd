#include "qss/channel.hpp"

#include "qss/adversary.hpp"
#include "qss/qcore/unitaries.hpp"

namespace qss {

Agent other_agent(Agent a) {
  return a == Agent::Bob ? Agent::Charlie : Agent::Bob;
}

ChannelLeg forward_leg(Agent a) {
  return a == Agent::Bob ? ChannelLeg::AliceToBob : ChannelLeg::AliceToCharlie;
}

ChannelLeg return_leg(Agent a) {
  return a == Agent::Bob ? ChannelLeg::BobToAlice : ChannelLeg::CharlieToAlice;
}

Agent agent_of(ChannelLeg leg) {
  return (leg == ChannelLeg::AliceToBob || leg == ChannelLeg::BobToAlice)
             ? Agent::Bob
             : Agent::Charlie;
}

bool is_forward(ChannelLeg leg) {
  return leg == ChannelLeg::AliceToBob || leg == ChannelLeg::AliceToCharlie;
}

const char* leg_name(ChannelLeg leg) {
  switch (leg) {
    case ChannelLeg::AliceToBob:
      return "alice-to-bob";
    case ChannelLeg::AliceToCharlie:
      return "alice-to-charlie";
    case ChannelLeg::BobToAlice:
      return "bob-to-alice";
    case ChannelLeg::CharlieToAlice:
      return "charlie-to-alice";
  }
  return "?";
}

const char* agent_name(Agent a) { return a == Agent::Bob ? "bob" : "charlie"; }

int leg_index(ChannelLeg leg) { return static_cast<int>(leg); }

PhotonMessage transmit(PhotonMessage msg, const ChannelModel& model,
                       Adversary* tap, qcore::PhotonRegistry& reg, Rng& rng,
                       bool* lost) {
  if (lost != nullptr) *lost = false;
  if (msg.photon.has_value()) {
    if (rng.bernoulli(model.loss_prob)) {
      reg.discard(*msg.photon, rng);
      msg.photon.reset();
      if (lost != nullptr) *lost = true;
      return msg;  // destroyed in transit; nothing reaches the tap
    }
    if (rng.bernoulli(model.depolarize_prob)) {
      const int which = 1 + static_cast<int>(rng.below(3));
      reg.apply_local(*msg.photon,
                      qcore::unitary_matrix(qcore::unitary_from_bits(which)));
    }
  }
  if (tap != nullptr) {
    tap->intercept(msg, reg, rng);
  }
  return msg;
}

}  // namespace qss

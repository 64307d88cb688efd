#pragma once

#include <cstdint>
#include <optional>

#include "qss/qcore/registry.hpp"
#include "qss/rng.hpp"

namespace qss {

enum class ChannelLeg {
  AliceToBob = 0,
  AliceToCharlie = 1,
  BobToAlice = 2,
  CharlieToAlice = 3,
};

inline constexpr int kLegCount = 4;

enum class Agent { Bob = 0, Charlie = 1 };

Agent other_agent(Agent a);
ChannelLeg forward_leg(Agent a);
ChannelLeg return_leg(Agent a);
Agent agent_of(ChannelLeg leg);
bool is_forward(ChannelLeg leg);
const char* leg_name(ChannelLeg leg);
const char* agent_name(Agent a);
int leg_index(ChannelLeg leg);

enum class PhotonKind { PairHalf = 0, Decoy = 1 };

// One transmission slot. `photon` is empty on return legs when the sender
// has nothing to return (agent kept or consumed the photon) or after a loss;
// the empty message still traverses the leg so that photon absence is
// observable at the tap and the receiver.
struct PhotonMessage {
  std::uint64_t round_id = 0;
  ChannelLeg leg = ChannelLeg::AliceToBob;
  std::optional<qcore::PhotonId> photon;
  PhotonKind kind = PhotonKind::PairHalf;
  int slot = 0;
};

struct ChannelModel {
  double loss_prob = 0.0;        // per leg
  double depolarize_prob = 0.0;  // per leg
};

class Adversary;

// Sends one message through a leg: a Bernoulli loss draw (a lost photon is
// traced out of its joint state and dropped from the message), then a
// Bernoulli depolarization draw (one of the three nontrivial encoding
// unitaries, chosen uniformly), then the adversary tap, which may measure,
// store, or substitute the photon. Messages without a photon skip the noise
// draws but still reach the tap. `lost` reports whether the loss draw fired.
PhotonMessage transmit(PhotonMessage msg, const ChannelModel& model,
                       Adversary* tap, qcore::PhotonRegistry& reg, Rng& rng,
                       bool* lost = nullptr);

}  // namespace qss

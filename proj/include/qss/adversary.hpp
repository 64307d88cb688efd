#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "qss/channel.hpp"
#include "qss/qcore/bases.hpp"
#include "qss/qcore/bell.hpp"
#include "qss/qcore/registry.hpp"
#include "qss/qcore/unitaries.hpp"
#include "qss/rng.hpp"

namespace qss {

struct Transcript;

enum class AttackKind {
  None = 0,
  InterceptResend = 1,
  FakeEprOpaque = 2,
  LossOnly = 3,
};

const char* attack_name(AttackKind kind);

struct BasisPolicy {
  bool uniform = true;
  qcore::MeasBasis fixed = qcore::MeasBasis::Z;
};

struct AttackConfig {
  AttackKind kind = AttackKind::None;
  // InterceptResend: the tapped leg. LossOnly: photons are absorbed on the
  // return leg of this leg's agent line (forward traffic passes untouched).
  ChannelLeg leg = ChannelLeg::AliceToCharlie;
  BasisPolicy basis_policy{};
  // InterceptResend only: additionally tap the opposite direction of the same
  // agent line. Measuring the same photon before and after the agent's
  // encoding is what turns intercept-resend into partial key knowledge; a
  // one-direction tap learns nothing about the key.
  bool tap_return_leg = true;
  // FakeEprOpaque: the agent mounting the attack. The other agent's line is
  // tapped in both directions.
  Agent dishonest = Agent::Bob;

  // The agent whose secret operation is under attack.
  Agent victim() const;
};

struct RoundLog {
  // Exact operation read via the fake-pair Bell measurement, when the victim
  // encoded and returned the substituted photon.
  std::optional<qcore::UnitaryCode> learned;
  // Posterior over the victim's operation code: bit i set means code i is
  // still consistent with everything the attacker observed this round.
  std::uint8_t possible_codes = 0x0f;
  // The victim kept the photon, the disposal Bell measurement missed the
  // safe outcome, and the attacker erased the evidence by suppressing the
  // dishonest agent's own return and calling it a loss.
  bool cheated_loss = false;
  std::optional<qcore::BellMember> swap_outcome;
};

struct AdversaryLog {
  AttackConfig config{};
  std::vector<RoundLog> rounds;
};

class Adversary {
 public:
  explicit Adversary(const AttackConfig& config) : cfg_(config) {
    log_.config = config;
  }
  virtual ~Adversary() = default;

  // Called by the session once per round, before any transmission.
  void begin_round(std::uint64_t round_id);

  // Tap hook invoked by transmit() after the noise draws. May mutate the
  // message (substitute or remove the photon) and the registry.
  virtual void intercept(PhotonMessage& msg, qcore::PhotonRegistry& reg,
                         Rng& rng) = 0;

  bool cheated_loss_this_round() const;
  const AttackConfig& config() const { return cfg_; }
  const AdversaryLog& log() const { return log_; }

 protected:
  // Reset per-round attack scratch state.
  virtual void on_round_start() {}
  RoundLog& current() { return log_.rounds.back(); }

  AttackConfig cfg_;
  AdversaryLog log_;
};

std::unique_ptr<Adversary> make_adversary(const AttackConfig& config);

// Fraction of the victim's key bits (2 per key round) that the attacker
// pinned down correctly, over rounds contributing to the key (decoded and
// not consumed by the second check). A bit counts only when every operation
// code still possible in the attacker's posterior agrees on it and it
// matches the operation actually applied.
double leakage_summary(const AdversaryLog& log, const Transcript& transcript);

}  // namespace qss

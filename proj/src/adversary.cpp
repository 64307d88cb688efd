#include "qss/adversary.hpp"

#include <map>

#include "qss/protocol.hpp"

namespace qss {

const char* attack_name(AttackKind kind) {
  switch (kind) {
    case AttackKind::None:
      return "none";
    case AttackKind::InterceptResend:
      return "intercept-resend";
    case AttackKind::FakeEprOpaque:
      return "fake-epr";
    case AttackKind::LossOnly:
      return "loss-only";
  }
  return "?";
}

Agent AttackConfig::victim() const {
  if (kind == AttackKind::FakeEprOpaque) return other_agent(dishonest);
  return agent_of(leg);
}

void Adversary::begin_round(std::uint64_t round_id) {
  (void)round_id;
  log_.rounds.emplace_back();
  on_round_start();
}

bool Adversary::cheated_loss_this_round() const {
  return !log_.rounds.empty() && log_.rounds.back().cheated_loss;
}

namespace {

using qcore::BellMember;
using qcore::BellSet;
using qcore::MeasBasis;
using qcore::PhotonRegistry;

class PassThroughAttack : public Adversary {
 public:
  using Adversary::Adversary;
  void intercept(PhotonMessage&, PhotonRegistry&, Rng&) override {}
};

// Measure-and-resend on every tapped slot. A photon measured on both passes
// of the victim's line in the same basis narrows the victim's operation to
// the two codes that preserve (or the two that flip) that basis' eigenstates.
class InterceptResendAttack : public Adversary {
 public:
  using Adversary::Adversary;

  void intercept(PhotonMessage& msg, PhotonRegistry& reg, Rng& rng) override {
    if (!taps(msg.leg) || !msg.photon.has_value()) return;
    const MeasBasis basis =
        cfg_.basis_policy.uniform
            ? qcore::basis_from_index(static_cast<int>(rng.below(3)))
            : cfg_.basis_policy.fixed;
    const int outcome = reg.measure_single(*msg.photon, basis, rng);
    msg.photon = reg.create_single(qcore::basis_eigvec(basis, outcome));
    if (is_forward(msg.leg)) {
      forward_[msg.slot] = SlotRecord{basis, outcome};
      return;
    }
    const auto it = forward_.find(msg.slot);
    if (it == forward_.end() || it->second.basis != basis) return;
    const bool preserved = it->second.outcome == outcome;
    current().possible_codes = mask_for(basis, preserved);
  }

 private:
  struct SlotRecord {
    MeasBasis basis;
    int outcome;
  };

  bool taps(ChannelLeg leg) const {
    if (leg == cfg_.leg) return true;
    return cfg_.tap_return_leg && agent_of(leg) == agent_of(cfg_.leg);
  }

  static std::uint8_t mask_for(MeasBasis basis, bool preserved) {
    // Codes whose unitaries fix each basis' eigenstates (up to phase);
    // the complement flips them.
    switch (basis) {
      case MeasBasis::Z:
        return preserved ? 0x03 : 0x0c;  // {U0,U1} vs {U2,U3}
      case MeasBasis::X:
        return preserved ? 0x05 : 0x0a;  // {U0,U2} vs {U1,U3}
      case MeasBasis::Y:
        return preserved ? 0x09 : 0x06;  // {U0,U3} vs {U1,U2}
    }
    return 0x0f;
  }

  void on_round_start() override { forward_.clear(); }

  std::map<int, SlotRecord> forward_;
};

// The opaque attack: every slot on the victim's forward leg is stored and
// replaced by half of a fresh maximally entangled pair. A returned photon is
// Bell-measured against the kept half, which reads the victim's operation
// exactly; the operation is then replayed onto the stored original so the
// sender's decoding stays consistent. An absent return (victim kept the
// photon) triggers a disposal Bell measurement of the kept half against the
// stored original; any outcome other than the safe one makes the dishonest
// agent hide the round by reporting his own photon lost.
class FakeEprAttack : public Adversary {
 public:
  using Adversary::Adversary;

  void intercept(PhotonMessage& msg, PhotonRegistry& reg, Rng& rng) override {
    const Agent victim = cfg_.victim();
    if (msg.leg == forward_leg(victim)) {
      if (!msg.photon.has_value()) return;
      const auto [keep, fake] =
          reg.create_bell(BellSet::Standard, BellMember::PhiPlus);
      slots_[msg.slot] = SlotRecord{*msg.photon, keep, true};
      msg.photon = fake;
      return;
    }
    if (msg.leg != return_leg(victim)) return;
    const auto it = slots_.find(msg.slot);
    if (it == slots_.end() || !it->second.open) return;
    it->second.open = false;
    if (msg.photon.has_value()) {
      const BellMember out =
          reg.bell_measure(it->second.keep, *msg.photon, BellSet::Standard, rng);
      const int code = qcore::member_label_bits(out);
      current().learned = qcore::unitary_from_bits(code);
      current().possible_codes = static_cast<std::uint8_t>(1u << code);
      reg.apply_local(it->second.stored,
                      qcore::unitary_matrix(*current().learned));
      msg.photon = it->second.stored;
    } else {
      const BellMember out = reg.bell_measure(it->second.keep,
                                              it->second.stored,
                                              BellSet::Standard, rng);
      current().swap_outcome = out;
      if (out != BellMember::PhiPlus) current().cheated_loss = true;
    }
  }

 private:
  struct SlotRecord {
    qcore::PhotonId stored;
    qcore::PhotonId keep;
    bool open = false;
  };

  void on_round_start() override { slots_.clear(); }

  std::map<int, SlotRecord> slots_;
};

// Absorbs everything on the configured line's return leg; forward traffic is
// untouched. Learns nothing — models a pure photon-number (denial) attacker
// that the checks cannot see because loss is not an error.
class LossOnlyAttack : public Adversary {
 public:
  using Adversary::Adversary;

  void intercept(PhotonMessage& msg, PhotonRegistry& reg, Rng& rng) override {
    if (msg.leg != return_leg(agent_of(cfg_.leg)) || !msg.photon.has_value()) {
      return;
    }
    reg.discard(*msg.photon, rng);
    msg.photon.reset();
  }
};

}  // namespace

std::unique_ptr<Adversary> make_adversary(const AttackConfig& config) {
  switch (config.kind) {
    case AttackKind::None:
      return std::make_unique<PassThroughAttack>(config);
    case AttackKind::InterceptResend:
      return std::make_unique<InterceptResendAttack>(config);
    case AttackKind::FakeEprOpaque:
      return std::make_unique<FakeEprAttack>(config);
    case AttackKind::LossOnly:
      return std::make_unique<LossOnlyAttack>(config);
  }
  return std::make_unique<PassThroughAttack>(config);
}

double leakage_summary(const AdversaryLog& log, const Transcript& transcript) {
  const std::vector<std::uint64_t> ids = key_round_ids(transcript);
  if (ids.empty()) return 0.0;
  const Agent victim = log.config.victim();
  std::uint64_t known = 0;
  for (const std::uint64_t rid : ids) {
    const RoundRecord& rec = transcript.rounds[rid];
    const AgentRound& ar = rec.agent(victim);
    if (!ar.op.has_value()) continue;
    const int truth = qcore::unitary_bits(*ar.op);
    const std::uint8_t mask = rid < log.rounds.size()
                                  ? log.rounds[rid].possible_codes
                                  : std::uint8_t{0x0f};
    if (mask == 0) continue;
    for (int bit = 0; bit < 2; ++bit) {
      int want = -1;
      bool consistent = true;
      for (int code = 0; code < 4; ++code) {
        if ((mask & (1u << code)) == 0) continue;
        const int v = (code >> bit) & 1;
        if (want == -1) {
          want = v;
        } else if (want != v) {
          consistent = false;
          break;
        }
      }
      if (consistent && want == ((truth >> bit) & 1)) ++known;
    }
  }
  return static_cast<double>(known) / (2.0 * static_cast<double>(ids.size()));
}

}  // namespace qss

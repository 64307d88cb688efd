#include "qss/protocol.hpp"

#include <algorithm>
#include <array>
#include <utility>

#include "qss/qcore/bases.hpp"
#include "qss/qcore/registry.hpp"

namespace qss {

using qcore::BellMember;
using qcore::BellSet;
using qcore::PhotonId;
using qcore::PhotonRegistry;

void SessionConfig::validate() const {
  if (rounds < 1) throw ConfigError("rounds must be at least 1");
  if (!(p_d >= 0.0 && p_d < 1.0)) throw ConfigError("p_d must be in [0, 1)");
  if (!(p_c >= 0.0 && p_c < 0.5)) throw ConfigError("p_c must be in [0, 0.5)");
  if (!(epsilon_th >= 0.0 && epsilon_th < 1.0)) {
    throw ConfigError("epsilon_th must be in [0, 1)");
  }
  if (!(second_check_fraction > 0.0 && second_check_fraction < 1.0)) {
    throw ConfigError("second_check_fraction must be in (0, 1)");
  }
  if (min_check_samples < 1) {
    throw ConfigError("min_check_samples must be at least 1");
  }
  if (!(channel.loss_prob >= 0.0 && channel.loss_prob < 1.0)) {
    throw ConfigError("loss_prob must be in [0, 1)");
  }
  if (!(channel.depolarize_prob >= 0.0 && channel.depolarize_prob < 1.0)) {
    throw ConfigError("depolarize_prob must be in [0, 1)");
  }
}

int decode_combined(BellMember prepared, BellMember outcome) {
  return qcore::member_label_bits(prepared) ^ qcore::member_label_bits(outcome);
}

int remap_agent_code(BellSet set, Agent agent, int code) {
  // Label action of Bob-side operations under the Rotated set; everything
  // else acts on the member label as a plain XOR of the code itself.
  static constexpr int kRotatedBob[4] = {0, 3, 1, 2};
  if (set == BellSet::Rotated && agent == Agent::Bob) {
    return kRotatedBob[code & 3];
  }
  return code & 3;
}

const char* mode_name(Mode m) { return m == Mode::Check ? "check" : "encode"; }

const char* check_name(CheckId id) {
  switch (id) {
    case CheckId::FirstCheckBob:
      return "first-check-bob";
    case CheckId::FirstCheckCharlie:
      return "first-check-charlie";
    case CheckId::VariantBob:
      return "variant-decoy-bob";
    case CheckId::VariantCharlie:
      return "variant-decoy-charlie";
    case CheckId::SecondCheck:
      return "second-check";
  }
  return "?";
}

namespace {

constexpr std::array<Agent, 2> kAgents = {Agent::Bob, Agent::Charlie};

int idx(Agent a) { return static_cast<int>(a); }

}  // namespace

SessionResult run_session(const SessionConfig& config) {
  config.validate();
  Rng rng(config.seed);
  PhotonRegistry reg;
  auto adversary = make_adversary(config.attack);

  Transcript t;
  t.config = config;
  t.rounds.reserve(config.rounds);

  for (std::uint64_t r = 0; r < config.rounds; ++r) {
    adversary->begin_round(r);
    RoundRecord rec;
    rec.round_id = r;

    // Preparation draws: state, then one decoy decision per agent leg.
    const int state = static_cast<int>(rng.below(8));
    rec.prepared_set = static_cast<BellSet>(state / qcore::kBellMemberCount);
    rec.prepared_member =
        qcore::member_from_index(state % qcore::kBellMemberCount);
    for (const Agent a : kAgents) {
      if (rng.bernoulli(config.p_d)) {
        DecoyRecord d;
        d.state_index = static_cast<int>(rng.below(qcore::kDecoyStateCount));
        rec.agent(a).decoy = d;
      }
    }
    const auto [photon_b, photon_c] =
        reg.create_bell(rec.prepared_set, rec.prepared_member);

    // Forward transmissions, Bob's line first; a decoy slot precedes the
    // pair half on its leg.
    std::array<std::optional<PhotonId>, 2> pair_at{};
    std::array<std::optional<PhotonId>, 2> decoy_at{};
    for (const Agent a : kAgents) {
      AgentRound& ar = rec.agent(a);
      int slot = 0;
      if (ar.decoy.has_value()) {
        const PhotonId dp =
            reg.create(qcore::prepare_decoy(ar.decoy->state_index))[0];
        PhotonMessage m{r, forward_leg(a), dp, PhotonKind::Decoy, slot++};
        ++t.photons_sent;
        bool lost = false;
        m = transmit(m, config.channel, adversary.get(), reg, rng, &lost);
        if (lost) {
          ar.loss_forward = true;
          ++t.photons_lost_channel;
        }
        if (m.photon.has_value()) {
          ++t.photons_delivered;
          ar.decoy->arrived = true;
          decoy_at[idx(a)] = m.photon;
        }
      }
      ar.pair_slot = slot;
      PhotonMessage m{r, forward_leg(a),
                      a == Agent::Bob ? photon_b : photon_c,
                      PhotonKind::PairHalf, slot};
      ++t.photons_sent;
      bool lost = false;
      m = transmit(m, config.channel, adversary.get(), reg, rng, &lost);
      if (lost) {
        ar.loss_forward = true;
        ++t.photons_lost_channel;
      }
      if (m.photon.has_value()) {
        ++t.photons_delivered;
        ar.pair_arrived = true;
        pair_at[idx(a)] = m.photon;
      }
    }

    // Agent steps: mode draw, decoy measurement (every mode), then either a
    // check measurement of the pair half or an encoding operation.
    std::array<std::optional<PhotonId>, 2> to_return{};
    std::array<PhotonKind, 2> return_kind{PhotonKind::PairHalf,
                                          PhotonKind::PairHalf};
    for (const Agent a : kAgents) {
      AgentRound& ar = rec.agent(a);
      ar.mode = rng.bernoulli(config.p_c) ? Mode::Check : Mode::Encode;
      if (decoy_at[idx(a)].has_value()) {
        const int basis = static_cast<int>(rng.below(qcore::kBasisCount));
        ar.decoy->basis = basis;
        ar.decoy->outcome = reg.measure_single(
            *decoy_at[idx(a)], qcore::basis_from_index(basis), rng);
      }
      if (pair_at[idx(a)].has_value()) {
        if (ar.mode == Mode::Check) {
          const int basis = static_cast<int>(rng.below(qcore::kBasisCount));
          ar.check_basis = basis;
          ar.check_outcome = reg.measure_single(
              *pair_at[idx(a)], qcore::basis_from_index(basis), rng);
        } else {
          const int code = static_cast<int>(rng.below(qcore::kUnitaryCount));
          ar.op = qcore::unitary_from_bits(code);
          reg.apply_local(*pair_at[idx(a)], qcore::unitary_matrix(*ar.op));
          to_return[idx(a)] = pair_at[idx(a)];
        }
      }
      if (config.agent_decoy_variant && ar.mode == Mode::Check) {
        ar.self_decoy = static_cast<int>(rng.below(qcore::kDecoyStateCount));
        to_return[idx(a)] = reg.create(qcore::prepare_decoy(*ar.self_decoy))[0];
        return_kind[idx(a)] = PhotonKind::Decoy;
      }
    }

    // Return transmissions, Bob first. The message is sent even when there
    // is no photon so that absence is observable downstream.
    std::array<std::optional<PhotonId>, 2> returned{};
    for (const Agent a : kAgents) {
      AgentRound& ar = rec.agent(a);
      PhotonMessage m{r, return_leg(a), to_return[idx(a)],
                      return_kind[idx(a)], ar.pair_slot};
      if (m.photon.has_value()) {
        ++t.photons_sent;
        ar.return_sent = true;
      }
      bool lost = false;
      m = transmit(m, config.channel, adversary.get(), reg, rng, &lost);
      if (lost) {
        ar.loss_return = true;
        ++t.photons_lost_channel;
      }
      returned[idx(a)] = m.photon;
    }

    // A cheating attacker erases a risky round by making the dishonest
    // agent's own photon disappear before Alice can use it.
    if (adversary->cheated_loss_this_round()) {
      auto& suppressed = returned[idx(config.attack.dishonest)];
      if (suppressed.has_value()) {
        reg.discard(*suppressed, rng);
        suppressed.reset();
      }
    }
    for (const Agent a : kAgents) {
      if (returned[idx(a)].has_value()) {
        ++t.photons_delivered;
        rec.agent(a).return_arrived = true;
      }
    }

    // Alice's step: returned agent decoys are verified against the (later)
    // announced preparation; the pair is decoded only when both halves are
    // back, which in the honest flow means both agents encoded.
    for (const Agent a : kAgents) {
      AgentRound& ar = rec.agent(a);
      if (config.agent_decoy_variant && ar.mode == Mode::Check &&
          returned[idx(a)].has_value()) {
        ar.self_decoy_arrived = true;
        ar.self_decoy_outcome = reg.measure_single(
            *returned[idx(a)], qcore::decoy_basis(*ar.self_decoy), rng);
        returned[idx(a)].reset();
      }
    }
    if (rec.bob.mode == Mode::Encode && rec.charlie.mode == Mode::Encode &&
        returned[0].has_value() && returned[1].has_value()) {
      rec.alice_outcome = reg.bell_measure(*returned[0], *returned[1],
                                           rec.prepared_set, rng);
    }

    // Photons nobody consumed (widowed pair halves, attacker leftovers) are
    // traced out so the next round starts clean.
    for (const PhotonId p : reg.live_photon_ids()) {
      reg.discard(p, rng);
    }

    t.rounds.push_back(std::move(rec));
  }

  // Second-check selection: a uniform sample of floor(fraction * decodable)
  // rounds via partial shuffle; reveal order alternates with the selection
  // index so the two orders differ in count by at most one.
  std::vector<std::uint64_t> decodable;
  for (const RoundRecord& rec : t.rounds) {
    if (rec.decodable()) decodable.push_back(rec.round_id);
  }
  const std::uint64_t picks = static_cast<std::uint64_t>(
      config.second_check_fraction * static_cast<double>(decodable.size()));
  for (std::uint64_t i = 0; i < picks; ++i) {
    const std::uint64_t j =
        i + rng.below(static_cast<std::uint64_t>(decodable.size()) - i);
    std::swap(decodable[i], decodable[j]);
    RoundRecord& rec = t.rounds[decodable[i]];
    rec.selected_for_second_check = true;
    rec.bob_reveals_first = (i % 2 == 0);
  }

  // Public announcements, in ledger order: Alice's per-round set reveals,
  // the agents' check reveals, then the second-check operation reveals.
  for (const RoundRecord& rec : t.rounds) {
    Announcement a;
    a.type = AnnouncementType::BasisSet;
    a.round_id = rec.round_id;
    a.set = rec.prepared_set;
    t.announcements.push_back(a);
  }
  for (const RoundRecord& rec : t.rounds) {
    for (const Agent ag : kAgents) {
      const AgentRound& ar = rec.agent(ag);
      if (ar.mode != Mode::Check) continue;
      Announcement a;
      a.type = AnnouncementType::CheckReveal;
      a.round_id = rec.round_id;
      a.agent = ag;
      if (ar.decoy.has_value() && ar.decoy->basis.has_value()) {
        a.decoy_basis = ar.decoy->basis;
        a.decoy_outcome = ar.decoy->outcome;
      }
      if (ar.check_basis.has_value()) {
        a.pair_basis = ar.check_basis;
        a.pair_outcome = ar.check_outcome;
      }
      if (ar.self_decoy.has_value()) a.self_decoy = ar.self_decoy;
      t.announcements.push_back(a);
    }
  }
  for (const RoundRecord& rec : t.rounds) {
    if (!rec.selected_for_second_check) continue;
    Announcement a;
    a.type = AnnouncementType::SecondCheckOps;
    a.round_id = rec.round_id;
    a.agent = rec.bob_reveals_first ? Agent::Bob : Agent::Charlie;
    a.op_first = qcore::unitary_bits(*rec.agent(a.agent).op);
    a.op_second = qcore::unitary_bits(*rec.agent(other_agent(a.agent)).op);
    t.announcements.push_back(a);
  }

  SessionResult result;
  result.transcript = std::move(t);
  result.adversary_log = adversary->log();
  return result;
}

namespace {

void finish_stats(CheckStats& s, const Transcript& t) {
  s.qber = s.samples > 0
               ? static_cast<double>(s.errors) / static_cast<double>(s.samples)
               : 0.0;
  s.sufficient = s.samples >= t.config.min_check_samples;
  s.yield_per_round =
      t.rounds.empty()
          ? 0.0
          : static_cast<double>(s.samples) / static_cast<double>(t.rounds.size());
}

}  // namespace

CheckStats first_check(const Transcript& t, Agent agent) {
  CheckStats s;
  std::uint64_t decoys_sent = 0;
  for (const RoundRecord& rec : t.rounds) {
    const AgentRound& ar = rec.agent(agent);
    if (!ar.decoy.has_value()) continue;
    ++decoys_sent;
    // Results are public only for check rounds; the comparison needs the
    // measuring basis to match the preparation basis.
    if (ar.mode != Mode::Check) continue;
    const DecoyRecord& d = *ar.decoy;
    if (!d.arrived || !d.basis.has_value()) continue;
    if (*d.basis != qcore::basis_index(qcore::decoy_basis(d.state_index))) {
      continue;
    }
    ++s.samples;
    if (*d.outcome != qcore::decoy_eigen_index(d.state_index)) ++s.errors;
  }
  finish_stats(s, t);
  s.yield_per_decoy =
      decoys_sent > 0
          ? static_cast<double>(s.samples) / static_cast<double>(decoys_sent)
          : 0.0;
  return s;
}

CheckStats second_check(const Transcript& t) {
  CheckStats s;
  for (const RoundRecord& rec : t.rounds) {
    if (!rec.selected_for_second_check) continue;
    ++s.samples;
    const int expected =
        remap_agent_code(rec.prepared_set, Agent::Bob,
                         qcore::unitary_bits(*rec.bob.op)) ^
        remap_agent_code(rec.prepared_set, Agent::Charlie,
                         qcore::unitary_bits(*rec.charlie.op));
    if (decode_combined(rec.prepared_member, *rec.alice_outcome) != expected) {
      ++s.errors;
    }
  }
  finish_stats(s, t);
  return s;
}

CheckStats variant_decoy_check(const Transcript& t, Agent agent) {
  CheckStats s;
  std::uint64_t sent = 0;
  for (const RoundRecord& rec : t.rounds) {
    const AgentRound& ar = rec.agent(agent);
    if (!ar.self_decoy.has_value()) continue;
    ++sent;
    if (!ar.self_decoy_arrived || !ar.self_decoy_outcome.has_value()) continue;
    ++s.samples;
    if (*ar.self_decoy_outcome != qcore::decoy_eigen_index(*ar.self_decoy)) {
      ++s.errors;
    }
  }
  finish_stats(s, t);
  s.yield_per_decoy =
      sent > 0 ? static_cast<double>(s.samples) / static_cast<double>(sent)
               : 0.0;
  return s;
}

std::vector<std::uint64_t> key_round_ids(const Transcript& t) {
  std::vector<std::uint64_t> ids;
  for (const RoundRecord& rec : t.rounds) {
    if (rec.decodable() && !rec.selected_for_second_check) {
      ids.push_back(rec.round_id);
    }
  }
  return ids;
}

bool KeyMaterial::xor_holds() const {
  if (codes_a.size() != codes_b.size() || codes_a.size() != codes_c.size()) {
    return false;
  }
  for (std::size_t i = 0; i < codes_a.size(); ++i) {
    if (codes_a[i] != (codes_b[i] ^ codes_c[i])) return false;
  }
  return true;
}

std::string key_hex(const std::vector<std::uint8_t>& codes) {
  static const char* kDigits = "0123456789abcdef";
  std::string out;
  out.reserve((codes.size() + 3) / 4 * 2);
  for (std::size_t base = 0; base < codes.size(); base += 4) {
    int byte = 0;
    for (std::size_t k = 0; k < 4; ++k) {
      const int code =
          base + k < codes.size() ? (codes[base + k] & 3) : 0;  // zero padding
      byte |= code << (6 - 2 * static_cast<int>(k));
    }
    out.push_back(kDigits[byte >> 4]);
    out.push_back(kDigits[byte & 0x0f]);
  }
  return out;
}

SiftOutcome sift(const Transcript& t) {
  SiftOutcome out;
  std::vector<std::pair<CheckId, CheckStats>> checks;
  checks.emplace_back(CheckId::FirstCheckBob, first_check(t, Agent::Bob));
  checks.emplace_back(CheckId::FirstCheckCharlie,
                      first_check(t, Agent::Charlie));
  if (t.config.agent_decoy_variant) {
    checks.emplace_back(CheckId::VariantBob,
                        variant_decoy_check(t, Agent::Bob));
    checks.emplace_back(CheckId::VariantCharlie,
                        variant_decoy_check(t, Agent::Charlie));
  }
  checks.emplace_back(CheckId::SecondCheck, second_check(t));
  for (const auto& [id, stats] : checks) {
    if (stats.sufficient && stats.qber > t.config.epsilon_th) {
      out.aborted = true;
      out.abort = AbortInfo{id, stats.qber};
      break;
    }
  }
  for (const std::uint64_t rid : key_round_ids(t)) {
    const RoundRecord& rec = t.rounds[rid];
    out.key.round_ids.push_back(rid);
    out.key.codes_a.push_back(static_cast<std::uint8_t>(
        decode_combined(rec.prepared_member, *rec.alice_outcome)));
    out.key.codes_b.push_back(static_cast<std::uint8_t>(remap_agent_code(
        rec.prepared_set, Agent::Bob, qcore::unitary_bits(*rec.bob.op))));
    out.key.codes_c.push_back(static_cast<std::uint8_t>(
        remap_agent_code(rec.prepared_set, Agent::Charlie,
                         qcore::unitary_bits(*rec.charlie.op))));
  }
  return out;
}

}  // namespace qss

#include <cstdint>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "qss/metrics.hpp"
#include "qss/qcore/bases.hpp"

namespace qss {

namespace {

using nlohmann::ordered_json;

constexpr const char* kSchemaTag = "qss-report-v1";

ordered_json stats_to_json(const CheckStats& s) {
  return ordered_json{{"samples", s.samples},
                      {"errors", s.errors},
                      {"sufficient", s.sufficient},
                      {"qber", s.qber},
                      {"yield_per_round", s.yield_per_round},
                      {"yield_per_decoy", s.yield_per_decoy}};
}

CheckStats stats_from_json(const ordered_json& j) {
  CheckStats s;
  s.samples = j.at("samples").get<std::uint64_t>();
  s.errors = j.at("errors").get<std::uint64_t>();
  s.sufficient = j.at("sufficient").get<bool>();
  s.qber = j.at("qber").get<double>();
  s.yield_per_round = j.at("yield_per_round").get<double>();
  s.yield_per_decoy = j.at("yield_per_decoy").get<double>();
  return s;
}

std::string policy_to_string(const BasisPolicy& p) {
  if (p.uniform) return "uniform";
  switch (p.fixed) {
    case qcore::MeasBasis::Z:
      return "fixed-z";
    case qcore::MeasBasis::X:
      return "fixed-x";
    case qcore::MeasBasis::Y:
      return "fixed-y";
  }
  return "uniform";
}

BasisPolicy policy_from_string(const std::string& s) {
  BasisPolicy p;
  if (s == "uniform") return p;
  p.uniform = false;
  if (s == "fixed-z") {
    p.fixed = qcore::MeasBasis::Z;
  } else if (s == "fixed-x") {
    p.fixed = qcore::MeasBasis::X;
  } else if (s == "fixed-y") {
    p.fixed = qcore::MeasBasis::Y;
  } else {
    throw std::runtime_error("unknown basis policy: " + s);
  }
  return p;
}

AttackKind attack_from_string(const std::string& s) {
  for (const AttackKind k :
       {AttackKind::None, AttackKind::InterceptResend, AttackKind::FakeEprOpaque,
        AttackKind::LossOnly}) {
    if (s == attack_name(k)) return k;
  }
  throw std::runtime_error("unknown attack kind: " + s);
}

ChannelLeg leg_from_string(const std::string& s) {
  for (const ChannelLeg l :
       {ChannelLeg::AliceToBob, ChannelLeg::AliceToCharlie,
        ChannelLeg::BobToAlice, ChannelLeg::CharlieToAlice}) {
    if (s == leg_name(l)) return l;
  }
  throw std::runtime_error("unknown channel leg: " + s);
}

Agent agent_from_string(const std::string& s) {
  for (const Agent a : {Agent::Bob, Agent::Charlie}) {
    if (s == agent_name(a)) return a;
  }
  throw std::runtime_error("unknown agent: " + s);
}

CheckId check_from_string(const std::string& s) {
  for (const CheckId id :
       {CheckId::FirstCheckBob, CheckId::FirstCheckCharlie, CheckId::VariantBob,
        CheckId::VariantCharlie, CheckId::SecondCheck}) {
    if (s == check_name(id)) return id;
  }
  throw std::runtime_error("unknown check id: " + s);
}

ordered_json config_to_json(const SessionConfig& c) {
  return ordered_json{
      {"rounds", c.rounds},
      {"p_d", c.p_d},
      {"p_c", c.p_c},
      {"epsilon_th", c.epsilon_th},
      {"second_check_fraction", c.second_check_fraction},
      {"seed", c.seed},
      {"min_check_samples", c.min_check_samples},
      {"agent_decoy_variant", c.agent_decoy_variant},
      {"channel",
       ordered_json{{"loss_prob", c.channel.loss_prob},
                    {"depolarize_prob", c.channel.depolarize_prob}}},
      {"attack",
       ordered_json{{"kind", attack_name(c.attack.kind)},
                    {"leg", leg_name(c.attack.leg)},
                    {"basis_policy", policy_to_string(c.attack.basis_policy)},
                    {"tap_return_leg", c.attack.tap_return_leg},
                    {"dishonest", agent_name(c.attack.dishonest)}}},
  };
}

SessionConfig config_from_json(const ordered_json& j) {
  SessionConfig c;
  c.rounds = j.at("rounds").get<std::uint64_t>();
  c.p_d = j.at("p_d").get<double>();
  c.p_c = j.at("p_c").get<double>();
  c.epsilon_th = j.at("epsilon_th").get<double>();
  c.second_check_fraction = j.at("second_check_fraction").get<double>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.min_check_samples = j.at("min_check_samples").get<std::uint64_t>();
  c.agent_decoy_variant = j.at("agent_decoy_variant").get<bool>();
  const ordered_json& ch = j.at("channel");
  c.channel.loss_prob = ch.at("loss_prob").get<double>();
  c.channel.depolarize_prob = ch.at("depolarize_prob").get<double>();
  const ordered_json& at = j.at("attack");
  c.attack.kind = attack_from_string(at.at("kind").get<std::string>());
  c.attack.leg = leg_from_string(at.at("leg").get<std::string>());
  c.attack.basis_policy =
      policy_from_string(at.at("basis_policy").get<std::string>());
  c.attack.tap_return_leg = at.at("tap_return_leg").get<bool>();
  c.attack.dishonest = agent_from_string(at.at("dishonest").get<std::string>());
  return c;
}

ordered_json counts_to_json(const ReportCounts& c) {
  return ordered_json{
      {"rounds", c.rounds},
      {"decoys_sent_bob", c.decoys_sent_bob},
      {"decoys_sent_charlie", c.decoys_sent_charlie},
      {"photons_sent", c.photons_sent},
      {"photons_delivered", c.photons_delivered},
      {"photons_lost_channel", c.photons_lost_channel},
      {"checked_rounds_bob", c.checked_rounds_bob},
      {"checked_rounds_charlie", c.checked_rounds_charlie},
      {"decoded_rounds", c.decoded_rounds},
      {"second_checked_rounds", c.second_checked_rounds},
      {"key_rounds", c.key_rounds},
      {"cheated_loss_rounds", c.cheated_loss_rounds},
  };
}

ReportCounts counts_from_json(const ordered_json& j) {
  ReportCounts c;
  c.rounds = j.at("rounds").get<std::uint64_t>();
  c.decoys_sent_bob = j.at("decoys_sent_bob").get<std::uint64_t>();
  c.decoys_sent_charlie = j.at("decoys_sent_charlie").get<std::uint64_t>();
  c.photons_sent = j.at("photons_sent").get<std::uint64_t>();
  c.photons_delivered = j.at("photons_delivered").get<std::uint64_t>();
  c.photons_lost_channel = j.at("photons_lost_channel").get<std::uint64_t>();
  c.checked_rounds_bob = j.at("checked_rounds_bob").get<std::uint64_t>();
  c.checked_rounds_charlie =
      j.at("checked_rounds_charlie").get<std::uint64_t>();
  c.decoded_rounds = j.at("decoded_rounds").get<std::uint64_t>();
  c.second_checked_rounds = j.at("second_checked_rounds").get<std::uint64_t>();
  c.key_rounds = j.at("key_rounds").get<std::uint64_t>();
  c.cheated_loss_rounds = j.at("cheated_loss_rounds").get<std::uint64_t>();
  return c;
}

ordered_json efficiency_to_json(const EfficiencyEstimates& e) {
  return ordered_json{
      {"decoy_fraction", e.decoy_fraction},
      {"encode_fraction", e.encode_fraction},
      {"check_fraction", e.check_fraction},
      {"eta_q", e.eta_q},
      {"eta_t", e.eta_t},
      {"eta_q_slot", e.eta_q_slot},
      {"eta_t_full", e.eta_t_full},
      {"b_s_full", e.b_s_full},
      {"q_t_full", e.q_t_full},
      {"b_t_full", e.b_t_full},
      {"b_t_check_only", e.b_t_check_only},
  };
}

EfficiencyEstimates efficiency_from_json(const ordered_json& j) {
  EfficiencyEstimates e;
  e.decoy_fraction = j.at("decoy_fraction").get<double>();
  e.encode_fraction = j.at("encode_fraction").get<double>();
  e.check_fraction = j.at("check_fraction").get<double>();
  e.eta_q = j.at("eta_q").get<double>();
  e.eta_t = j.at("eta_t").get<double>();
  e.eta_q_slot = j.at("eta_q_slot").get<double>();
  e.eta_t_full = j.at("eta_t_full").get<double>();
  e.b_s_full = j.at("b_s_full").get<double>();
  e.q_t_full = j.at("q_t_full").get<double>();
  e.b_t_full = j.at("b_t_full").get<double>();
  e.b_t_check_only = j.at("b_t_check_only").get<double>();
  return e;
}

ordered_json yield_to_json(const DecoyYield& y) {
  return ordered_json{{"per_round", y.per_round}, {"per_decoy", y.per_decoy}};
}

DecoyYield yield_from_json(const ordered_json& j) {
  DecoyYield y;
  y.per_round = j.at("per_round").get<double>();
  y.per_decoy = j.at("per_decoy").get<double>();
  return y;
}

}  // namespace

std::string serialize_report(const Report& r) {
  ordered_json j;
  j["schema"] = kSchemaTag;
  j["config"] = config_to_json(r.config);
  j["counts"] = counts_to_json(r.counts);
  ordered_json checks;
  checks["first_bob"] = stats_to_json(r.first_bob);
  checks["first_charlie"] = stats_to_json(r.first_charlie);
  checks["second"] = stats_to_json(r.second);
  checks["variant_bob"] =
      r.variant_bob.has_value() ? stats_to_json(*r.variant_bob) : ordered_json();
  checks["variant_charlie"] = r.variant_charlie.has_value()
                                  ? stats_to_json(*r.variant_charlie)
                                  : ordered_json();
  j["checks"] = std::move(checks);
  j["efficiency"] = ordered_json{
      {"theory",
       ordered_json{{"eta_q", r.eta_q_theory}, {"eta_t", r.eta_t_theory}}},
      {"empirical", efficiency_to_json(r.efficiency)},
  };
  j["decoy_yield"] = ordered_json{{"bob", yield_to_json(r.yield_bob)},
                                  {"charlie", yield_to_json(r.yield_charlie)}};
  j["leakage"] = r.leakage;
  ordered_json abort;
  abort["aborted"] = r.aborted;
  abort["failed_check"] = r.abort.has_value()
                              ? ordered_json(check_name(r.abort->failed_check))
                              : ordered_json();
  abort["qber"] =
      r.abort.has_value() ? ordered_json(r.abort->qber) : ordered_json();
  j["abort"] = std::move(abort);
  j["key"] = ordered_json{{"bits", r.key_bits},
                          {"xor_holds", r.xor_holds},
                          {"k_a", r.key_a_hex},
                          {"k_b", r.key_b_hex},
                          {"k_c", r.key_c_hex}};
  return j.dump(2) + "\n";
}

Report parse_report(const std::string& text) {
  try {
    const ordered_json j = ordered_json::parse(text);
    if (j.at("schema").get<std::string>() != kSchemaTag) {
      throw std::runtime_error("unknown report schema");
    }
    Report r;
    r.config = config_from_json(j.at("config"));
    r.counts = counts_from_json(j.at("counts"));
    const ordered_json& checks = j.at("checks");
    r.first_bob = stats_from_json(checks.at("first_bob"));
    r.first_charlie = stats_from_json(checks.at("first_charlie"));
    r.second = stats_from_json(checks.at("second"));
    if (!checks.at("variant_bob").is_null()) {
      r.variant_bob = stats_from_json(checks.at("variant_bob"));
    }
    if (!checks.at("variant_charlie").is_null()) {
      r.variant_charlie = stats_from_json(checks.at("variant_charlie"));
    }
    const ordered_json& eff = j.at("efficiency");
    r.eta_q_theory = eff.at("theory").at("eta_q").get<double>();
    r.eta_t_theory = eff.at("theory").at("eta_t").get<double>();
    r.efficiency = efficiency_from_json(eff.at("empirical"));
    r.yield_bob = yield_from_json(j.at("decoy_yield").at("bob"));
    r.yield_charlie = yield_from_json(j.at("decoy_yield").at("charlie"));
    r.leakage = j.at("leakage").get<double>();
    const ordered_json& abort = j.at("abort");
    r.aborted = abort.at("aborted").get<bool>();
    if (!abort.at("failed_check").is_null()) {
      AbortInfo info;
      info.failed_check =
          check_from_string(abort.at("failed_check").get<std::string>());
      info.qber = abort.at("qber").get<double>();
      r.abort = info;
    }
    const ordered_json& key = j.at("key");
    r.key_bits = key.at("bits").get<std::uint64_t>();
    r.xor_holds = key.at("xor_holds").get<bool>();
    r.key_a_hex = key.at("k_a").get<std::string>();
    r.key_b_hex = key.at("k_b").get<std::string>();
    r.key_c_hex = key.at("k_c").get<std::string>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("malformed report: ") + e.what());
  }
}

}  // namespace qss

#include "qss/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace qss {

double efficiency_total(const EfficiencyInputs& in) {
  if (in.b_s < 0 || in.q_t < 0 || in.b_t < 0) {
    throw std::invalid_argument("efficiency inputs must be nonnegative");
  }
  const double denom = in.q_t + in.b_t;
  if (denom <= 0) {
    throw std::invalid_argument("efficiency denominator must be positive");
  }
  return in.b_s / denom;
}

double theoretical_eta_q(double p_d, double p_c) {
  return (1.0 - p_d) * (1.0 - p_c) * (1.0 - p_c);
}

double theoretical_eta_t(double p_d, double p_c) {
  return 0.5 * (1.0 - p_d) * (1.0 - p_c) * (1.0 - p_c) / (1.0 + p_c);
}

EfficiencyEstimates empirical_efficiencies(const Transcript& t) {
  EfficiencyEstimates e;
  if (t.rounds.empty()) return e;
  const double rounds = static_cast<double>(t.rounds.size());

  std::uint64_t decoys = 0;
  std::uint64_t decoded = 0;
  std::uint64_t second_checked = 0;
  for (const RoundRecord& rec : t.rounds) {
    if (rec.bob.decoy.has_value()) ++decoys;
    if (rec.charlie.decoy.has_value()) ++decoys;
    if (rec.decodable()) ++decoded;
    if (rec.selected_for_second_check) ++second_checked;
  }
  std::uint64_t check_reveals = 0;
  std::uint64_t pair_check_reveals = 0;
  for (const Announcement& a : t.announcements) {
    if (a.type != AnnouncementType::CheckReveal) continue;
    ++check_reveals;
    if (a.pair_basis.has_value()) ++pair_check_reveals;
  }
  const std::uint64_t key_rounds = decoded - second_checked;

  e.decoy_fraction = static_cast<double>(decoys) / (2.0 * rounds);
  e.encode_fraction = static_cast<double>(decoded) / rounds;
  e.check_fraction = static_cast<double>(pair_check_reveals) / (2.0 * rounds);
  e.eta_q = e.encode_fraction * (1.0 - e.decoy_fraction);
  e.eta_t = 0.5 * e.eta_q / (1.0 + e.check_fraction);
  e.eta_q_slot = 2.0 * static_cast<double>(decoded) /
                 (2.0 * rounds + static_cast<double>(decoys));
  e.b_s_full = 2.0 * static_cast<double>(key_rounds);
  e.q_t_full = static_cast<double>(t.photons_sent);
  // 1 bit per round for the set reveal, 3 bits per check-reveal
  // announcement (mode flag plus basis/outcome payload), 5 bits per
  // second-check announcement (round selection plus two operation codes).
  e.b_t_full = rounds + 3.0 * static_cast<double>(check_reveals) +
               5.0 * static_cast<double>(second_checked);
  e.b_t_check_only = 2.0 * static_cast<double>(pair_check_reveals);
  e.eta_t_full =
      efficiency_total(EfficiencyInputs{e.b_s_full, e.q_t_full, e.b_t_full});
  return e;
}

EfficiencySigmas efficiency_sigmas(double p_d, double p_c,
                                   std::uint64_t rounds) {
  EfficiencySigmas s;
  if (rounds == 0) return s;
  const double n = static_cast<double>(rounds);
  const double both_encode = (1.0 - p_c) * (1.0 - p_c);
  const double g = 1.0 - p_d;
  const double c = p_c;  // mean pair-check fraction
  const double var_f = both_encode * (1.0 - both_encode) / n;
  const double var_g = p_d * (1.0 - p_d) / (2.0 * n);
  const double var_c = p_c * (1.0 - p_c) / (2.0 * n);
  // A round contributing to f (both agents encoded) contributes nothing to
  // the pair-check count, so f and c are negatively correlated.
  const double cov_fc = -both_encode * p_c / n;

  s.sigma_q = std::sqrt(g * g * var_f + both_encode * both_encode * var_g);

  const double df = 0.5 * g / (1.0 + c);
  const double dg = 0.5 * both_encode / (1.0 + c);
  const double dc = -0.5 * both_encode * g / ((1.0 + c) * (1.0 + c));
  double var_t = df * df * var_f + dg * dg * var_g + dc * dc * var_c +
                 2.0 * df * dc * cov_fc;
  if (var_t < 0) var_t = 0;
  s.sigma_t = std::sqrt(var_t);
  return s;
}

DecoyYield decoy_yield(const Transcript& t, Agent agent) {
  const CheckStats s = first_check(t, agent);
  return DecoyYield{s.yield_per_round, s.yield_per_decoy};
}

ReportCounts count_transcript(const Transcript& t,
                              const AdversaryLog& adversary_log) {
  ReportCounts c;
  c.rounds = t.rounds.size();
  c.photons_sent = t.photons_sent;
  c.photons_delivered = t.photons_delivered;
  c.photons_lost_channel = t.photons_lost_channel;
  for (const RoundRecord& rec : t.rounds) {
    if (rec.bob.decoy.has_value()) ++c.decoys_sent_bob;
    if (rec.charlie.decoy.has_value()) ++c.decoys_sent_charlie;
    if (rec.bob.mode == Mode::Check) ++c.checked_rounds_bob;
    if (rec.charlie.mode == Mode::Check) ++c.checked_rounds_charlie;
    if (rec.decodable()) ++c.decoded_rounds;
    if (rec.selected_for_second_check) ++c.second_checked_rounds;
  }
  c.key_rounds = c.decoded_rounds - c.second_checked_rounds;
  for (const RoundLog& rl : adversary_log.rounds) {
    if (rl.cheated_loss) ++c.cheated_loss_rounds;
  }
  return c;
}

Report build_report(const SessionResult& result) {
  const Transcript& t = result.transcript;
  Report r;
  r.config = t.config;
  r.counts = count_transcript(t, result.adversary_log);
  r.first_bob = first_check(t, Agent::Bob);
  r.first_charlie = first_check(t, Agent::Charlie);
  r.second = second_check(t);
  if (t.config.agent_decoy_variant) {
    r.variant_bob = variant_decoy_check(t, Agent::Bob);
    r.variant_charlie = variant_decoy_check(t, Agent::Charlie);
  }
  r.efficiency = empirical_efficiencies(t);
  r.eta_q_theory = theoretical_eta_q(t.config.p_d, t.config.p_c);
  r.eta_t_theory = theoretical_eta_t(t.config.p_d, t.config.p_c);
  r.yield_bob = decoy_yield(t, Agent::Bob);
  r.yield_charlie = decoy_yield(t, Agent::Charlie);
  r.leakage = leakage_summary(result.adversary_log, t);

  const SiftOutcome sifted = sift(t);
  r.aborted = sifted.aborted;
  r.abort = sifted.abort;
  if (sifted.aborted) {
    // Keys are abandoned on abort; the empty key trivially satisfies the
    // XOR relation.
    r.xor_holds = true;
  } else {
    r.key_bits = 2 * sifted.key.codes_a.size();
    r.xor_holds = sifted.key.xor_holds();
    r.key_a_hex = key_hex(sifted.key.codes_a);
    r.key_b_hex = key_hex(sifted.key.codes_b);
    r.key_c_hex = key_hex(sifted.key.codes_c);
  }
  return r;
}

}  // namespace qss

#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "qss/protocol.hpp"

namespace qss {

struct EfficiencyInputs {
  double b_s = 0;  // bits of raw key
  double q_t = 0;  // qubits transmitted
  double b_t = 0;  // classical bits exchanged
};

// b_s / (q_t + b_t). Throws std::invalid_argument on a nonpositive
// denominator or negative inputs.
double efficiency_total(const EfficiencyInputs& in);

// (1 - p_d) * (1 - p_c)^2
double theoretical_eta_q(double p_d, double p_c);

// 0.5 * (1 - p_d) * (1 - p_c)^2 / (1 + p_c)
double theoretical_eta_t(double p_d, double p_c);

// Empirical efficiencies over a finished transcript.
//
// The headline eta_q / eta_t estimators normalize the way the closed-form
// targets do, where the decoy rate discounts useful instances: decoys here
// are extra slots that never displace a pair, so the decoy discount is
// applied as an explicit (1 - decoy_fraction) factor. The _slot and _full
// variants instead normalize by what was actually transmitted/announced.
struct EfficiencyEstimates {
  double decoy_fraction = 0;   // decoy slots per agent leg per round
  double encode_fraction = 0;  // decoded rounds / rounds
  double check_fraction = 0;   // pair-half check reveals / (2 * rounds)
  double eta_q = 0;            // encode_fraction * (1 - decoy_fraction)
  double eta_t = 0;  // 0.5 * eta_q / (1 + check_fraction), see report docs
  double eta_q_slot = 0;  // decoded pair photons / forward photon slots
  double eta_t_full = 0;  // efficiency_total over the full accounting below
  double b_s_full = 0;    // 2 bits per key round (second-checked excluded)
  double q_t_full = 0;    // every photon transmission, decoys and returns in
  double b_t_full = 0;    // set reveals + check reveals + second-check costs
  double b_t_check_only = 0;  // 2 bits per pair-half check reveal
};

EfficiencyEstimates empirical_efficiencies(const Transcript& t);

// Large-sample standard deviations of the eta_q / eta_t estimators for an
// honest lossless session at the given parameters (delta method over the
// underlying binomial counts; 0 at p_d = p_c = 0).
struct EfficiencySigmas {
  double sigma_q = 0;
  double sigma_t = 0;
};

EfficiencySigmas efficiency_sigmas(double p_d, double p_c,
                                   std::uint64_t rounds);

// Fraction of rounds (and of sent decoys) on one agent leg that produced a
// basis-matched decoy comparison.
struct DecoyYield {
  double per_round = 0;
  double per_decoy = 0;
};

DecoyYield decoy_yield(const Transcript& t, Agent agent);

struct ReportCounts {
  std::uint64_t rounds = 0;
  std::uint64_t decoys_sent_bob = 0;
  std::uint64_t decoys_sent_charlie = 0;
  std::uint64_t photons_sent = 0;
  std::uint64_t photons_delivered = 0;
  std::uint64_t photons_lost_channel = 0;
  std::uint64_t checked_rounds_bob = 0;
  std::uint64_t checked_rounds_charlie = 0;
  std::uint64_t decoded_rounds = 0;
  std::uint64_t second_checked_rounds = 0;
  std::uint64_t key_rounds = 0;
  std::uint64_t cheated_loss_rounds = 0;
};

ReportCounts count_transcript(const Transcript& t,
                              const AdversaryLog& adversary_log);

struct Report {
  SessionConfig config{};
  ReportCounts counts{};
  CheckStats first_bob{};
  CheckStats first_charlie{};
  CheckStats second{};
  std::optional<CheckStats> variant_bob;
  std::optional<CheckStats> variant_charlie;
  EfficiencyEstimates efficiency{};
  double eta_q_theory = 0;
  double eta_t_theory = 0;
  DecoyYield yield_bob{};
  DecoyYield yield_charlie{};
  double leakage = 0;
  bool aborted = false;
  std::optional<AbortInfo> abort;
  std::uint64_t key_bits = 0;
  bool xor_holds = false;
  std::string key_a_hex;
  std::string key_b_hex;
  std::string key_c_hex;
};

Report build_report(const SessionResult& result);

// Fixed-field-order JSON document ending in one newline. Serialization is
// deterministic: identical reports give identical bytes.
std::string serialize_report(const Report& r);

// Inverse of serialize_report; throws std::runtime_error on malformed or
// incomplete documents. parse -> serialize round-trips byte-identically.
Report parse_report(const std::string& text);

}  // namespace qss

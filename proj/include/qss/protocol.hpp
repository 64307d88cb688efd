#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qss/adversary.hpp"
#include "qss/channel.hpp"
#include "qss/qcore/bell.hpp"
#include "qss/qcore/unitaries.hpp"

namespace qss {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Mode { Check = 0, Encode = 1 };

struct SessionConfig {
  std::uint64_t rounds = 10000;
  double p_d = 0.1;                  // decoy insertion probability per leg
  double p_c = 0.1;                  // check-mode probability per agent
  double epsilon_th = 0.05;          // abort threshold for every check QBER
  double second_check_fraction = 0.1;
  std::uint64_t seed = 1;
  AttackConfig attack{};
  ChannelModel channel{};
  // Agents answer check rounds with a decoy photon of their own instead of
  // returning nothing; Alice verifies it against the later announcement.
  bool agent_decoy_variant = false;
  std::uint64_t min_check_samples = 50;

  void validate() const;  // throws ConfigError
};

// One decoy slot on one agent leg. The agent measures every delivered
// photon, so basis/outcome are set whenever the decoy arrived; they become
// public (and usable for checking) only if the agent announces them, which
// happens exactly in check mode.
struct DecoyRecord {
  int state_index = 0;  // 0..5, see prepare_decoy
  bool arrived = false;
  std::optional<int> basis;    // measuring basis (0=Z,1=X,2=Y)
  std::optional<int> outcome;  // eigenvector index
};

struct AgentRound {
  Mode mode = Mode::Encode;
  std::optional<DecoyRecord> decoy;
  bool pair_arrived = false;
  int pair_slot = 0;
  std::optional<int> check_basis;    // check mode, pair half measured
  std::optional<int> check_outcome;
  std::optional<qcore::UnitaryCode> op;  // encode mode, pair half present
  bool return_sent = false;     // a photon physically entered the return leg
  bool return_arrived = false;  // ... and reached Alice
  bool loss_forward = false;    // channel loss fired on the forward leg
  bool loss_return = false;
  // Agent-decoy variant, check mode only.
  std::optional<int> self_decoy;          // 0..5
  bool self_decoy_arrived = false;
  std::optional<int> self_decoy_outcome;  // Alice's measurement in its basis
};

struct RoundRecord {
  std::uint64_t round_id = 0;
  qcore::BellSet prepared_set = qcore::BellSet::Standard;
  qcore::BellMember prepared_member = qcore::BellMember::PhiPlus;
  AgentRound bob;
  AgentRound charlie;
  std::optional<qcore::BellMember> alice_outcome;
  bool selected_for_second_check = false;
  bool bob_reveals_first = false;  // meaningful when selected

  const AgentRound& agent(Agent a) const {
    return a == Agent::Bob ? bob : charlie;
  }
  AgentRound& agent(Agent a) { return a == Agent::Bob ? bob : charlie; }
  bool decodable() const { return alice_outcome.has_value(); }
};

enum class AnnouncementType {
  BasisSet = 0,       // Alice: which entangled set the round used
  CheckReveal = 1,    // agent: mode disclosure plus measured results
  SecondCheckOps = 2  // both agents' operation codes, in reveal order
};

// Flat announcement record; unused fields stay empty. Operation codes may
// appear only in SecondCheckOps entries.
struct Announcement {
  AnnouncementType type = AnnouncementType::BasisSet;
  std::uint64_t round_id = 0;
  qcore::BellSet set = qcore::BellSet::Standard;  // BasisSet
  Agent agent = Agent::Bob;  // CheckReveal: announcer; SecondCheckOps: first
  std::optional<int> decoy_basis;    // CheckReveal
  std::optional<int> decoy_outcome;  // CheckReveal
  std::optional<int> pair_basis;     // CheckReveal
  std::optional<int> pair_outcome;   // CheckReveal
  std::optional<int> self_decoy;     // CheckReveal, agent-decoy variant
  std::optional<int> op_first;       // SecondCheckOps
  std::optional<int> op_second;      // SecondCheckOps
};

struct Transcript {
  SessionConfig config{};
  std::vector<RoundRecord> rounds;
  std::vector<Announcement> announcements;
  std::uint64_t photons_sent = 0;
  std::uint64_t photons_delivered = 0;
  std::uint64_t photons_lost_channel = 0;
};

// The two-bit combined-operation code Alice reads from one Bell outcome:
// XOR of the member labels of the prepared state and the measured state.
int decode_combined(qcore::BellMember prepared, qcore::BellMember outcome);

// The effective code an agent's operation contributes to the combined code.
// Identity except for Bob's side under the Rotated set, where the operations
// act on the member label through a fixed permutation.
int remap_agent_code(qcore::BellSet set, Agent agent, int code);

struct CheckStats {
  std::uint64_t samples = 0;
  std::uint64_t errors = 0;
  bool sufficient = false;  // samples >= min_check_samples
  double qber = 0.0;        // 0 when samples == 0
  double yield_per_round = 0.0;
  double yield_per_decoy = 0.0;  // decoy checks only
};

// Decoy comparison on one agent leg: over announced decoy measurements whose
// basis matches the preparation basis, the fraction of wrong outcomes.
CheckStats first_check(const Transcript& t, Agent agent);

// Operation disclosure on the selected decodable rounds: the fraction where
// the decoded combined code differs from the XOR of the announced codes.
CheckStats second_check(const Transcript& t);

// Agent-decoy variant: Alice's verification of the agents' own returned
// decoys against the announced preparations.
CheckStats variant_decoy_check(const Transcript& t, Agent agent);

enum class CheckId {
  FirstCheckBob = 0,
  FirstCheckCharlie = 1,
  VariantBob = 2,
  VariantCharlie = 3,
  SecondCheck = 4,
};

const char* check_name(CheckId id);

struct AbortInfo {
  CheckId failed_check = CheckId::FirstCheckBob;
  double qber = 0.0;
};

struct KeyMaterial {
  // One 2-bit code per key round, aligned across the three holders.
  std::vector<std::uint8_t> codes_a;
  std::vector<std::uint8_t> codes_b;
  std::vector<std::uint8_t> codes_c;
  std::vector<std::uint64_t> round_ids;

  bool xor_holds() const;  // codes_a[i] == codes_b[i] ^ codes_c[i] for all i
};

// Packs 2-bit codes into hex, four codes per byte, first code in the
// most significant bits.
std::string key_hex(const std::vector<std::uint8_t>& codes);

struct SiftOutcome {
  bool aborted = false;
  std::optional<AbortInfo> abort;
  // Populated regardless of abort; abandoned by honest parties on abort.
  KeyMaterial key;
};

// Evaluates every applicable check against epsilon_th (checks with fewer
// than min_check_samples samples cannot trigger an abort) and assembles the
// raw keys from the decodable rounds not consumed by the second check.
SiftOutcome sift(const Transcript& t);

std::vector<std::uint64_t> key_round_ids(const Transcript& t);

struct SessionResult {
  Transcript transcript;
  AdversaryLog adversary_log;
};

SessionResult run_session(const SessionConfig& config);

const char* mode_name(Mode m);

}  // namespace qss

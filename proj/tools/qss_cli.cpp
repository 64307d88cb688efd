// Command line front end: run one session, sweep a parameter grid, dump the
// algebra tables, or run the internal self-test.
//
// Exit codes: 0 = success, 1 = usage or configuration error, 2 = detected
// condition (session abort, self-test failure, sweep estimator mismatch).

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qss/metrics.hpp"
#include "qss/qcore/tables.hpp"
#include "qss/selftest.hpp"

namespace {

using nlohmann::ordered_json;
using namespace qss;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitDetected = 2;

const std::map<std::string, AttackKind> kAttackNames = {
    {"none", AttackKind::None},
    {"intercept-resend", AttackKind::InterceptResend},
    {"fake-epr", AttackKind::FakeEprOpaque},
    {"loss-only", AttackKind::LossOnly},
};

const std::map<std::string, ChannelLeg> kLegNames = {
    {"alice-to-bob", ChannelLeg::AliceToBob},
    {"alice-to-charlie", ChannelLeg::AliceToCharlie},
    {"bob-to-alice", ChannelLeg::BobToAlice},
    {"charlie-to-alice", ChannelLeg::CharlieToAlice},
};

const std::map<std::string, Agent> kAgentNames = {
    {"bob", Agent::Bob},
    {"charlie", Agent::Charlie},
};

BasisPolicy policy_from_name(const std::string& name) {
  BasisPolicy p;
  if (name == "uniform") return p;
  p.uniform = false;
  if (name == "fixed-z") {
    p.fixed = qcore::MeasBasis::Z;
  } else if (name == "fixed-x") {
    p.fixed = qcore::MeasBasis::X;
  } else if (name == "fixed-y") {
    p.fixed = qcore::MeasBasis::Y;
  } else {
    throw CLI::ValidationError("--attack-basis",
                               "unknown basis policy: " + name);
  }
  return p;
}

// Options shared by `run` and `sweep`.
struct CommonOpts {
  CLI::Option* rounds = nullptr;
  CLI::Option* pd = nullptr;
  CLI::Option* pc = nullptr;
  CLI::Option* threshold = nullptr;
  CLI::Option* scf = nullptr;
  CLI::Option* seed = nullptr;
  CLI::Option* loss = nullptr;
  CLI::Option* depol = nullptr;
  CLI::Option* attack = nullptr;
  CLI::Option* attack_leg = nullptr;
  CLI::Option* attack_basis = nullptr;
  CLI::Option* tap_return = nullptr;
  CLI::Option* dishonest = nullptr;
  CLI::Option* variant = nullptr;
  CLI::Option* min_samples = nullptr;
  CLI::Option* config_path = nullptr;

  std::uint64_t rounds_v = 10000;
  double pd_v = 0.1;
  double pc_v = 0.1;
  double threshold_v = 0.05;
  double scf_v = 0.1;
  std::uint64_t seed_v = 1;
  double loss_v = 0.0;
  double depol_v = 0.0;
  std::string attack_v = "none";
  std::string attack_leg_v = "alice-to-charlie";
  std::string attack_basis_v = "uniform";
  bool tap_return_v = true;
  std::string dishonest_v = "bob";
  bool variant_v = false;
  std::uint64_t min_samples_v = 50;
  std::string config_path_v;

  void add_to(CLI::App* cmd) {
    rounds = cmd->add_option("--rounds", rounds_v, "Protocol rounds");
    pd = cmd->add_option("--pd", pd_v, "Decoy insertion probability");
    pc = cmd->add_option("--pc", pc_v, "Check-mode probability");
    threshold =
        cmd->add_option("--threshold", threshold_v, "Abort QBER threshold");
    scf = cmd->add_option("--second-check-fraction", scf_v,
                          "Fraction of decoded rounds spent on the second "
                          "check");
    seed = cmd->add_option("--seed", seed_v, "Master RNG seed");
    loss = cmd->add_option("--loss", loss_v, "Per-leg photon loss probability");
    depol = cmd->add_option("--depolarize", depol_v,
                            "Per-leg depolarization probability");
    attack = cmd->add_option("--attack", attack_v, "Attack model")
                 ->check(CLI::IsMember({"none", "intercept-resend", "fake-epr",
                                        "loss-only"}));
    attack_leg = cmd->add_option("--attack-leg", attack_leg_v,
                                 "Tapped leg (intercept-resend) or attacked "
                                 "line (loss-only)")
                     ->check(CLI::IsMember({"alice-to-bob", "alice-to-charlie",
                                            "bob-to-alice",
                                            "charlie-to-alice"}));
    attack_basis =
        cmd->add_option("--attack-basis", attack_basis_v,
                        "Intercept basis policy")
            ->check(CLI::IsMember(
                {"uniform", "fixed-z", "fixed-x", "fixed-y"}));
    tap_return = cmd->add_flag("--tap-return-leg,!--no-tap-return-leg",
                               tap_return_v,
                               "Intercept-resend: also tap the return "
                               "direction of the same line (default on)");
    dishonest = cmd->add_option("--dishonest", dishonest_v,
                                "Fake-pair attack: the colluding agent")
                    ->check(CLI::IsMember({"bob", "charlie"}));
    variant = cmd->add_flag("--agent-decoy-variant", variant_v,
                            "Agents answer check rounds with their own decoy "
                            "photon");
    min_samples = cmd->add_option("--min-check-samples", min_samples_v,
                                  "Minimum samples before a check can abort");
    config_path = cmd->add_option("--config", config_path_v,
                                  "JSON config file (flags override it)");
  }

  // Applies the config file first (when given), then every flag the user
  // passed explicitly.
  SessionConfig build() const {
    SessionConfig cfg;
    if (config_path->count() > 0) apply_file(cfg);
    if (rounds->count()) cfg.rounds = rounds_v;
    if (pd->count()) cfg.p_d = pd_v;
    if (pc->count()) cfg.p_c = pc_v;
    if (threshold->count()) cfg.epsilon_th = threshold_v;
    if (scf->count()) cfg.second_check_fraction = scf_v;
    if (seed->count()) cfg.seed = seed_v;
    if (loss->count()) cfg.channel.loss_prob = loss_v;
    if (depol->count()) cfg.channel.depolarize_prob = depol_v;
    if (attack->count()) cfg.attack.kind = kAttackNames.at(attack_v);
    if (attack_leg->count()) cfg.attack.leg = kLegNames.at(attack_leg_v);
    if (attack_basis->count()) {
      cfg.attack.basis_policy = policy_from_name(attack_basis_v);
    }
    if (tap_return->count()) cfg.attack.tap_return_leg = tap_return_v;
    if (dishonest->count()) cfg.attack.dishonest = kAgentNames.at(dishonest_v);
    if (variant->count()) cfg.agent_decoy_variant = variant_v;
    if (min_samples->count()) cfg.min_check_samples = min_samples_v;
    return cfg;
  }

 private:
  void apply_file(SessionConfig& cfg) const {
    std::ifstream in(config_path_v);
    if (!in) {
      throw ConfigError("cannot open config file: " + config_path_v);
    }
    ordered_json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(std::string("config parse error: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    for (const auto& [key, value] : j.items()) {
      try {
        if (key == "rounds") {
          cfg.rounds = value.get<std::uint64_t>();
        } else if (key == "p_d") {
          cfg.p_d = value.get<double>();
        } else if (key == "p_c") {
          cfg.p_c = value.get<double>();
        } else if (key == "epsilon_th") {
          cfg.epsilon_th = value.get<double>();
        } else if (key == "second_check_fraction") {
          cfg.second_check_fraction = value.get<double>();
        } else if (key == "seed") {
          cfg.seed = value.get<std::uint64_t>();
        } else if (key == "loss_prob") {
          cfg.channel.loss_prob = value.get<double>();
        } else if (key == "depolarize_prob") {
          cfg.channel.depolarize_prob = value.get<double>();
        } else if (key == "attack") {
          const auto it = kAttackNames.find(value.get<std::string>());
          if (it == kAttackNames.end()) {
            throw ConfigError("unknown attack: " + value.get<std::string>());
          }
          cfg.attack.kind = it->second;
        } else if (key == "attack_leg") {
          const auto it = kLegNames.find(value.get<std::string>());
          if (it == kLegNames.end()) {
            throw ConfigError("unknown leg: " + value.get<std::string>());
          }
          cfg.attack.leg = it->second;
        } else if (key == "attack_basis") {
          cfg.attack.basis_policy = policy_from_name(value.get<std::string>());
        } else if (key == "tap_return_leg") {
          cfg.attack.tap_return_leg = value.get<bool>();
        } else if (key == "dishonest") {
          const auto it = kAgentNames.find(value.get<std::string>());
          if (it == kAgentNames.end()) {
            throw ConfigError("unknown agent: " + value.get<std::string>());
          }
          cfg.attack.dishonest = it->second;
        } else if (key == "agent_decoy_variant") {
          cfg.agent_decoy_variant = value.get<bool>();
        } else if (key == "min_check_samples") {
          cfg.min_check_samples = value.get<std::uint64_t>();
        } else {
          throw ConfigError("unknown config key: " + key);
        }
      } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config key '" + key + "': " + e.what());
      }
    }
  }
};

int cmd_run(const CommonOpts& opts, const std::string& out_path) {
  const SessionConfig cfg = opts.build();
  cfg.validate();
  const SessionResult result = run_session(cfg);
  const Report report = build_report(result);
  const std::string text = serialize_report(report);
  std::cout << text;
  if (!out_path.empty()) {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write " << out_path << "\n";
      return kExitUsage;
    }
    out << text;
  }
  return report.aborted ? kExitDetected : kExitOk;
}

int cmd_sweep(const CommonOpts& opts, const std::vector<double>& pd_grid,
              const std::vector<double>& pc_grid, const std::string& csv_path) {
  const SessionConfig base = opts.build();
  std::ofstream csv;
  if (!csv_path.empty()) {
    csv.open(csv_path, std::ios::binary);
    if (!csv) {
      std::cerr << "error: cannot write " << csv_path << "\n";
      return kExitUsage;
    }
    csv << "pd,pc,rounds,seed,eta_q,eta_q_theory,sigma_q,eta_t,eta_t_theory,"
           "sigma_t,pass\n";
  }
  std::printf("%-8s %-8s %-10s %-10s %-8s %-10s %-10s %-8s %s\n", "pd", "pc",
              "eta_q", "theory_q", "dev_q", "eta_t", "theory_t", "dev_t",
              "verdict");
  bool all_pass = true;
  std::uint64_t cell = 0;
  for (const double pd : pd_grid) {
    for (const double pc : pc_grid) {
      SessionConfig cfg = base;
      cfg.p_d = pd;
      cfg.p_c = pc;
      cfg.seed = mix_seed(base.seed, cell++);
      cfg.validate();
      const SessionResult result = run_session(cfg);
      const EfficiencyEstimates est =
          empirical_efficiencies(result.transcript);
      const double tq = theoretical_eta_q(pd, pc);
      const double tt = theoretical_eta_t(pd, pc);
      const EfficiencySigmas sg = efficiency_sigmas(pd, pc, cfg.rounds);
      const double dev_q = std::abs(est.eta_q - tq);
      const double dev_t = std::abs(est.eta_t - tt);
      const bool pass = dev_q <= 5.0 * sg.sigma_q + 1e-12 &&
                        dev_t <= 5.0 * sg.sigma_t + 1e-12;
      all_pass = all_pass && pass;
      const double dq_sig = sg.sigma_q > 0 ? dev_q / sg.sigma_q : 0.0;
      const double dt_sig = sg.sigma_t > 0 ? dev_t / sg.sigma_t : 0.0;
      std::printf("%-8.3f %-8.3f %-10.6f %-10.6f %-8.2f %-10.6f %-10.6f %-8.2f %s\n",
                  pd, pc, est.eta_q, tq, dq_sig, est.eta_t, tt, dt_sig,
                  pass ? "PASS" : "FAIL");
      if (csv.is_open()) {
        csv << pd << ',' << pc << ',' << cfg.rounds << ',' << cfg.seed << ','
            << est.eta_q << ',' << tq << ',' << sg.sigma_q << ',' << est.eta_t
            << ',' << tt << ',' << sg.sigma_t << ','
            << (pass ? "true" : "false") << '\n';
      }
    }
  }
  return all_pass ? kExitOk : kExitDetected;
}

ordered_json amp_json(const qcore::Amp& a) {
  return ordered_json::array({a.real(), a.imag()});
}

int cmd_tables() {
  ordered_json j;
  j["schema"] = "qss-tables-v1";

  ordered_json states = ordered_json::array();
  for (const auto set : {qcore::BellSet::Standard, qcore::BellSet::Rotated}) {
    for (int i = 0; i < qcore::kBellMemberCount; ++i) {
      const auto m = qcore::member_from_index(i);
      ordered_json e;
      e["set"] = qcore::set_name(set);
      e["member"] = qcore::member_name(set, m);
      e["label_bits"] = qcore::member_label_bits(m);
      ordered_json amps = ordered_json::array();
      for (const auto& a : qcore::bell_amps(set, m)) amps.push_back(amp_json(a));
      e["amps"] = std::move(amps);
      states.push_back(std::move(e));
    }
  }
  j["canonical_states"] = std::move(states);

  ordered_json reps = ordered_json::array();
  for (const auto& check : qcore::verify_representations()) {
    const auto& rep = *check.rep;
    ordered_json e;
    e["set"] = qcore::set_name(rep.set);
    e["member"] = qcore::member_name(rep.set, rep.member);
    e["basis_first"] = qcore::basis_name(rep.basis_first);
    e["basis_second"] = qcore::basis_name(rep.basis_second);
    ordered_json terms = ordered_json::array();
    for (const auto& t : rep.terms) {
      terms.push_back(ordered_json{{"coef", amp_json(t.coef)},
                                   {"eig_first", t.eig_first},
                                   {"eig_second", t.eig_second}});
    }
    e["terms"] = std::move(terms);
    e["phase_match"] = check.phase_match;
    e["exact"] = check.exact;
    e["tracked_phase"] = check.phase_match ? amp_json(check.tracked_phase)
                                           : ordered_json();
    reps.push_back(std::move(e));
  }
  j["representations"] = std::move(reps);

  const auto& mm = qcore::documented_rep_mismatch();
  const auto corrected = qcore::corrected_psi_minus_yx();
  ordered_json fixed;
  fixed["set"] = qcore::set_name(mm.set);
  fixed["member"] = qcore::member_name(mm.set, mm.member);
  fixed["basis_first"] = qcore::basis_name(mm.basis_first);
  fixed["basis_second"] = qcore::basis_name(mm.basis_second);
  ordered_json cterms = ordered_json::array();
  for (const auto& t : corrected.terms) {
    cterms.push_back(ordered_json{{"coef", amp_json(t.coef)},
                                  {"eig_first", t.eig_first},
                                  {"eig_second", t.eig_second}});
  }
  fixed["corrected_terms"] = std::move(cterms);
  j["documented_mismatch"] = std::move(fixed);

  // Printed-line lookup for annotating the computed table.
  const auto printed_sign_for =
      [](const qcore::TransitionResult& tr) -> ordered_json {
    const auto scan = [&](const std::vector<qcore::PrintedTransition>& table)
        -> ordered_json {
      for (const auto& p : table) {
        if (p.side == tr.side && p.u == tr.u && p.set == tr.set &&
            p.from == tr.from) {
          return ordered_json(p.printed_sign);
        }
      }
      return ordered_json();
    };
    if (tr.set == qcore::BellSet::Standard) {
      return scan(qcore::printed_standard_table());
    }
    return scan(qcore::printed_rotated_table());
  };

  ordered_json trans = ordered_json::array();
  for (const auto& tr : qcore::compute_full_table()) {
    ordered_json e;
    e["side"] = qcore::side_name(tr.side);
    e["op"] = qcore::unitary_name(tr.u);
    e["set"] = qcore::set_name(tr.set);
    e["from"] = qcore::member_name(tr.set, tr.from);
    e["to"] = qcore::member_name(tr.set, tr.to);
    e["phase"] = amp_json(tr.phase);
    const ordered_json printed = printed_sign_for(tr);
    e["printed_sign"] = printed;
    e["phase_exact"] =
        printed.is_null()
            ? ordered_json()
            : ordered_json(std::abs(tr.phase -
                                    qcore::Amp(printed.get<double>(), 0.0)) <=
                           qcore::kAlgebraTol);
    trans.push_back(std::move(e));
  }
  j["transitions"] = std::move(trans);

  ordered_json disc = ordered_json::array();
  for (const auto& d : qcore::documented_phase_discrepancies()) {
    disc.push_back(ordered_json{
        {"side", qcore::side_name(d.side)},
        {"op", qcore::unitary_name(d.u)},
        {"from", qcore::member_name(qcore::BellSet::Rotated, d.from)},
        {"computed_phase", amp_json(d.computed_phase)},
        {"printed_sign", d.printed_sign},
    });
  }
  j["phase_discrepancies"] = std::move(disc);

  std::cout << j.dump(2) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Deterministic simulator of a two-photon secret-sharing protocol "
      "with dense-coded pair rounds, decoy checks, and attack models"};
  app.require_subcommand(1);

  CLI::App* run = app.add_subcommand("run", "Run one session, print a JSON "
                                            "report (exit 2 on abort)");
  CommonOpts run_opts;
  run_opts.add_to(run);
  std::string out_path;
  run->add_option("--out", out_path, "Also write the report to this file");

  CLI::App* sweep = app.add_subcommand(
      "sweep", "Grid of honest sessions; checks the efficiency estimators "
               "against the closed forms (exit 2 on mismatch)");
  CommonOpts sweep_opts;
  sweep_opts.add_to(sweep);
  std::vector<double> pd_grid{0.0, 0.1, 0.3};
  std::vector<double> pc_grid{0.0, 0.1, 0.3};
  std::string csv_path;
  sweep->add_option("--pd-grid", pd_grid, "Decoy probabilities to sweep")
      ->delimiter(',');
  sweep->add_option("--pc-grid", pc_grid, "Check probabilities to sweep")
      ->delimiter(',');
  sweep->add_option("--csv", csv_path, "Write per-cell results to a CSV file");

  CLI::App* tables = app.add_subcommand(
      "tables", "Print the canonical states, product-basis expansions, and "
                "transition tables as JSON");

  CLI::App* selftest = app.add_subcommand(
      "selftest", "Run the built-in algebra checks (exit 2 on failure)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (run->parsed()) return cmd_run(run_opts, out_path);
    if (sweep->parsed()) return cmd_sweep(sweep_opts, pd_grid, pc_grid,
                                          csv_path);
    if (tables->parsed()) return cmd_tables();
    if (selftest->parsed()) {
      const auto results = qss::selftest::run_all();
      const int failures = qss::selftest::print_results(results, std::cout);
      return failures == 0 ? kExitOk : kExitDetected;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

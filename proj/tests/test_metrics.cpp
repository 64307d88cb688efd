#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <string>

#include "qss/metrics.hpp"
#include "qss/protocol.hpp"

using namespace qss;

TEST_CASE("total efficiency ratio") {
  CHECK(efficiency_total({0.5, 2, 2}) == 0.125);
  CHECK(efficiency_total({0, 1, 1}) == 0.0);
  CHECK_THROWS_AS(efficiency_total({1, 0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(efficiency_total({-1, 1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(efficiency_total({1, -2, 3}), std::invalid_argument);
  CHECK_THROWS_AS(efficiency_total({1, 2, -3}), std::invalid_argument);
}

TEST_CASE("closed-form efficiency targets") {
  CHECK(theoretical_eta_q(0, 0) == 1.0);
  CHECK(theoretical_eta_t(0, 0) == 0.5);
  CHECK(theoretical_eta_q(0.1, 0.1) == doctest::Approx(0.729).epsilon(1e-12));
  CHECK(theoretical_eta_t(0.1, 0.1) ==
        doctest::Approx(0.5 * 0.729 / 1.1).epsilon(1e-12));
  // Both shrink as either overhead grows.
  for (double pd = 0; pd < 0.8; pd += 0.2) {
    CHECK(theoretical_eta_q(pd + 0.2, 0.1) < theoretical_eta_q(pd, 0.1));
    CHECK(theoretical_eta_t(pd + 0.2, 0.1) < theoretical_eta_t(pd, 0.1));
  }
  for (double pc = 0; pc < 0.4; pc += 0.1) {
    CHECK(theoretical_eta_q(0.1, pc + 0.1) < theoretical_eta_q(0.1, pc));
    CHECK(theoretical_eta_t(0.1, pc + 0.1) < theoretical_eta_t(0.1, pc));
  }
}

TEST_CASE("estimators on a hand-built transcript") {
  Transcript t;
  t.photons_sent = 13;
  auto encode_round = [](std::uint64_t id) {
    RoundRecord rec;
    rec.round_id = id;
    rec.bob.mode = Mode::Encode;
    rec.charlie.mode = Mode::Encode;
    rec.alice_outcome = qcore::BellMember::PhiPlus;
    return rec;
  };
  t.rounds.push_back(encode_round(0));
  RoundRecord r1 = encode_round(1);
  r1.selected_for_second_check = true;
  t.rounds.push_back(r1);
  RoundRecord r2;  // Bob checks: the round decodes nothing
  r2.round_id = 2;
  r2.bob.mode = Mode::Check;
  r2.bob.check_basis = 0;
  r2.bob.check_outcome = 0;
  t.rounds.push_back(r2);
  RoundRecord r3 = encode_round(3);
  r3.bob.decoy = DecoyRecord{0, true, 0, 0};
  t.rounds.push_back(r3);

  Announcement reveal;
  reveal.type = AnnouncementType::CheckReveal;
  reveal.round_id = 2;
  reveal.agent = Agent::Bob;
  reveal.pair_basis = 0;
  reveal.pair_outcome = 0;
  t.announcements.push_back(reveal);

  const EfficiencyEstimates e = empirical_efficiencies(t);
  CHECK(e.decoy_fraction == 1.0 / 8);     // 1 decoy over 2 legs x 4 rounds
  CHECK(e.encode_fraction == 3.0 / 4);    // rounds 0, 1, 3 decoded
  CHECK(e.check_fraction == 1.0 / 8);     // 1 revealed pair check
  CHECK(e.eta_q == 0.75 * (1 - 0.125));
  CHECK(e.eta_t == 0.5 * e.eta_q / 1.125);
  CHECK(e.eta_q_slot == 6.0 / 9.0);       // 2 x 3 decoded over 8 + 1 slots
  CHECK(e.b_s_full == 4.0);               // 2 key rounds x 2 bits
  CHECK(e.q_t_full == 13.0);
  CHECK(e.b_t_full == 4 + 3.0 * 1 + 5.0 * 1);
  CHECK(e.b_t_check_only == 2.0);
  CHECK(e.eta_t_full == 4.0 / 25.0);

  const Transcript empty;
  CHECK(empirical_efficiencies(empty).eta_q == 0.0);
}

TEST_CASE("estimator spread model") {
  const EfficiencySigmas zero = efficiency_sigmas(0, 0, 10000);
  CHECK(zero.sigma_q == 0.0);
  CHECK(zero.sigma_t == 0.0);
  CHECK(efficiency_sigmas(0.1, 0.1, 0).sigma_q == 0.0);

  const EfficiencySigmas s1 = efficiency_sigmas(0.1, 0.1, 100);
  const EfficiencySigmas s4 = efficiency_sigmas(0.1, 0.1, 400);
  CHECK(s1.sigma_q > 0);
  CHECK(s1.sigma_t > 0);
  CHECK(s1.sigma_q == doctest::Approx(2 * s4.sigma_q).epsilon(1e-12));
  CHECK(s1.sigma_t == doctest::Approx(2 * s4.sigma_t).epsilon(1e-12));
}

TEST_CASE("empirical efficiencies land on the closed forms") {
  SessionConfig cfg;
  cfg.rounds = 50000;
  cfg.seed = 61;
  const SessionResult res = run_session(cfg);
  const Report rep = build_report(res);
  const EfficiencySigmas s = efficiency_sigmas(cfg.p_d, cfg.p_c, cfg.rounds);
  CHECK(rep.eta_q_theory == theoretical_eta_q(cfg.p_d, cfg.p_c));
  CHECK(rep.eta_t_theory == theoretical_eta_t(cfg.p_d, cfg.p_c));
  CHECK(std::abs(rep.efficiency.eta_q - rep.eta_q_theory) < 5 * s.sigma_q);
  CHECK(std::abs(rep.efficiency.eta_t - rep.eta_t_theory) < 5 * s.sigma_t);

  // Decoy comparisons: decoy present, agent checking, one basis in three.
  const double per_round = cfg.p_d * cfg.p_c / 3;
  const double per_decoy = cfg.p_c / 3;
  const double R = static_cast<double>(cfg.rounds);
  for (const Agent ag : {Agent::Bob, Agent::Charlie}) {
    const DecoyYield y = decoy_yield(res.transcript, ag);
    CHECK(std::abs(y.per_round - per_round) <
          5 * std::sqrt(per_round * (1 - per_round) / R));
    CHECK(std::abs(y.per_decoy - per_decoy) <
          5 * std::sqrt(per_decoy * (1 - per_decoy) / (R * cfg.p_d)));
  }
}

TEST_CASE("report serialization round-trips byte for byte") {
  SessionConfig cfg;
  cfg.rounds = 2500;
  cfg.seed = 67;
  cfg.agent_decoy_variant = true;
  const Report rep = build_report(run_session(cfg));
  const std::string text = serialize_report(rep);
  CHECK_FALSE(text.empty());
  CHECK(text.back() == '\n');
  const Report back = parse_report(text);
  CHECK(serialize_report(back) == text);
  CHECK(back.counts.key_rounds == rep.counts.key_rounds);
  CHECK(back.key_a_hex == rep.key_a_hex);
  CHECK(back.config.agent_decoy_variant);
  CHECK(back.variant_bob.has_value());
}

TEST_CASE("aborted sessions report the abort and publish no key") {
  SessionConfig cfg;
  cfg.rounds = 3000;
  cfg.seed = 71;
  cfg.p_d = 0.3;
  cfg.p_c = 0.3;
  cfg.attack.kind = AttackKind::FakeEprOpaque;
  cfg.attack.dishonest = Agent::Bob;
  const Report rep = build_report(run_session(cfg));
  REQUIRE(rep.aborted);
  REQUIRE(rep.abort.has_value());
  CHECK(rep.abort->failed_check == CheckId::FirstCheckCharlie);
  CHECK(rep.abort->qber > cfg.epsilon_th);
  CHECK(rep.key_bits == 0);
  CHECK(rep.xor_holds);  // vacuously, over the empty published key
  CHECK(rep.key_a_hex.empty());
  CHECK(rep.key_b_hex.empty());
  CHECK(rep.key_c_hex.empty());

  const std::string text = serialize_report(rep);
  const Report back = parse_report(text);
  CHECK(back.aborted);
  REQUIRE(back.abort.has_value());
  CHECK(back.abort->failed_check == CheckId::FirstCheckCharlie);
  CHECK(back.abort->qber == rep.abort->qber);
  CHECK_FALSE(back.variant_bob.has_value());
  CHECK(serialize_report(back) == text);
}

TEST_CASE("malformed report documents are rejected") {
  CHECK_THROWS_AS(parse_report(""), std::runtime_error);
  CHECK_THROWS_AS(parse_report("not json"), std::runtime_error);
  CHECK_THROWS_AS(parse_report("{}"), std::runtime_error);
  CHECK_THROWS_AS(parse_report("[1,2,3]"), std::runtime_error);

  SessionConfig cfg;
  cfg.rounds = 500;
  cfg.seed = 73;
  const std::string good = serialize_report(build_report(run_session(cfg)));
  CHECK_THROWS_AS(parse_report(good.substr(0, good.size() - 40)),
                  std::runtime_error);
  std::string wrong_tag = good;
  const auto pos = wrong_tag.find("qss-report-v1");
  REQUIRE(pos != std::string::npos);
  wrong_tag.replace(pos, 13, "qss-report-v0");
  CHECK_THROWS_AS(parse_report(wrong_tag), std::runtime_error);
}

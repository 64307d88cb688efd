#include <doctest.h>

#include <cmath>

#include "qss/adversary.hpp"
#include "qss/channel.hpp"

using namespace qss;
using qcore::Amp;
using qcore::PhotonRegistry;

namespace {

// Tap that records what it saw without touching anything.
class CountingTap : public Adversary {
 public:
  CountingTap() : Adversary(AttackConfig{}) {}
  void intercept(PhotonMessage& msg, PhotonRegistry&, Rng&) override {
    ++messages;
    if (msg.photon.has_value()) ++with_photon;
  }
  int messages = 0;
  int with_photon = 0;
};

PhotonMessage forward_msg(qcore::PhotonId p) {
  return PhotonMessage{0, ChannelLeg::AliceToBob, p, PhotonKind::PairHalf, 0};
}

}  // namespace

TEST_CASE("leg topology helpers") {
  CHECK(forward_leg(Agent::Bob) == ChannelLeg::AliceToBob);
  CHECK(forward_leg(Agent::Charlie) == ChannelLeg::AliceToCharlie);
  CHECK(return_leg(Agent::Bob) == ChannelLeg::BobToAlice);
  CHECK(return_leg(Agent::Charlie) == ChannelLeg::CharlieToAlice);
  CHECK(other_agent(Agent::Bob) == Agent::Charlie);
  for (const auto leg :
       {ChannelLeg::AliceToBob, ChannelLeg::AliceToCharlie,
        ChannelLeg::BobToAlice, ChannelLeg::CharlieToAlice}) {
    CHECK(agent_of(leg) == (leg == ChannelLeg::AliceToBob ||
                                    leg == ChannelLeg::BobToAlice
                                ? Agent::Bob
                                : Agent::Charlie));
    CHECK(is_forward(leg) == (leg == ChannelLeg::AliceToBob ||
                              leg == ChannelLeg::AliceToCharlie));
  }
  CHECK(leg_name(ChannelLeg::CharlieToAlice) ==
        doctest::String("charlie-to-alice"));
  CHECK(agent_name(Agent::Charlie) == doctest::String("charlie"));
}

TEST_CASE("a noiseless channel is the identity") {
  PhotonRegistry reg;
  Rng rng(1);
  const auto p = reg.create_single({Amp(1, 0), Amp(0, 0)});
  bool lost = true;
  const auto out = transmit(forward_msg(p), ChannelModel{}, nullptr, reg, rng,
                            &lost);
  CHECK_FALSE(lost);
  REQUIRE(out.photon.has_value());
  CHECK(*out.photon == p);
  CHECK(reg.project_single(p, qcore::MeasBasis::Z)[0] ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("loss fires at the configured rate and destroys the photon") {
  PhotonRegistry reg;
  Rng rng(42);
  const ChannelModel model{0.25, 0.0};
  const int n = 40000;
  int losses = 0;
  for (int i = 0; i < n; ++i) {
    const auto p = reg.create_single({Amp(1, 0), Amp(0, 0)});
    bool lost = false;
    const auto out = transmit(forward_msg(p), model, nullptr, reg, rng, &lost);
    if (lost) {
      ++losses;
      CHECK_FALSE(out.photon.has_value());
      CHECK_FALSE(reg.alive(p));
    } else {
      CHECK(out.photon.has_value());
    }
  }
  CHECK(reg.live_photons() == std::size_t(n - losses));
  const double sigma = std::sqrt(0.25 * 0.75 / n);
  CHECK(std::abs(double(losses) / n - 0.25) < 5 * sigma);
}

TEST_CASE("depolarization applies one of three encodings uniformly") {
  // On |0>, the phase flip is invisible in Z while both others flip the
  // bit: P(flip) = 2/3. On |+x>, the bit flip is the invisible one.
  Rng rng(7);
  const ChannelModel always{0.0, 1.0};
  const int n = 30000;
  int z_flips = 0;
  int x_flips = 0;
  for (int i = 0; i < n; ++i) {
    PhotonRegistry reg;
    const auto p = reg.create(qcore::prepare_decoy(0))[0];  // |0>
    transmit(forward_msg(p), always, nullptr, reg, rng);
    z_flips += reg.measure_single(p, qcore::MeasBasis::Z, rng);
    PhotonRegistry reg2;
    const auto q = reg2.create(qcore::prepare_decoy(2))[0];  // |+x>
    transmit(forward_msg(q), always, nullptr, reg2, rng);
    x_flips += reg2.measure_single(q, qcore::MeasBasis::X, rng);
  }
  const double expect = 2.0 / 3.0;
  const double sigma = std::sqrt(expect * (1 - expect) / n);
  CHECK(std::abs(double(z_flips) / n - expect) < 5 * sigma);
  CHECK(std::abs(double(x_flips) / n - expect) < 5 * sigma);
}

TEST_CASE("depolarization probability is the per-leg error budget") {
  // With flip probability p, a Z eigenstate flips with probability 2p/3.
  Rng rng(19);
  const double p = 0.3;
  const ChannelModel model{0.0, p};
  const int n = 40000;
  int flips = 0;
  for (int i = 0; i < n; ++i) {
    PhotonRegistry reg;
    const auto ph = reg.create(qcore::prepare_decoy(1))[0];  // |1>
    transmit(forward_msg(ph), model, nullptr, reg, rng);
    flips += reg.measure_single(ph, qcore::MeasBasis::Z, rng) == 0 ? 1 : 0;
  }
  const double expect = 2.0 * p / 3.0;
  const double sigma = std::sqrt(expect * (1 - expect) / n);
  CHECK(std::abs(double(flips) / n - expect) < 5 * sigma);
}

TEST_CASE("the tap sees surviving and absent messages but never lost photons") {
  PhotonRegistry reg;
  Rng rng(3);
  CountingTap tap;
  const ChannelModel lossy{1.0, 0.0};  // every photon is lost
  for (int i = 0; i < 10; ++i) {
    const auto p = reg.create_single({Amp(1, 0), Amp(0, 0)});
    transmit(forward_msg(p), lossy, &tap, reg, rng);
  }
  // A destroyed photon never reaches the tap -- the whole slot vanishes.
  CHECK(tap.messages == 0);
  CHECK(reg.live_photons() == 0);

  // A slot that was empty from the start does traverse the leg; downstream
  // observers (and attackers) can tell "nothing was sent" apart from noise.
  PhotonMessage empty{0, ChannelLeg::BobToAlice, std::nullopt,
                      PhotonKind::PairHalf, 0};
  transmit(empty, lossy, &tap, reg, rng);
  CHECK(tap.messages == 1);
  CHECK(tap.with_photon == 0);

  // Surviving photons arrive at the tap intact.
  const ChannelModel clean{};
  const auto p = reg.create_single({Amp(0, 0), Amp(1, 0)});
  transmit(forward_msg(p), clean, &tap, reg, rng);
  CHECK(tap.messages == 2);
  CHECK(tap.with_photon == 1);
}

TEST_CASE("loss draws are consumed before the tap acts") {
  // Identical seeds with and without a tap produce identical loss patterns,
  // i.e. the tap does not perturb the channel's randomness for lost photons.
  auto pattern = [](bool with_tap) {
    PhotonRegistry reg;
    Rng rng(55);
    CountingTap tap;
    std::vector<bool> losses;
    const ChannelModel model{0.5, 0.0};
    for (int i = 0; i < 100; ++i) {
      const auto p = reg.create_single({Amp(1, 0), Amp(0, 0)});
      bool lost = false;
      transmit(forward_msg(p), model, with_tap ? &tap : nullptr, reg, rng,
               &lost);
      losses.push_back(lost);
    }
    return losses;
  };
  CHECK(pattern(true) == pattern(false));
}

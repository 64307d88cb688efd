#include <doctest.h>

#include <array>
#include <cmath>
#include <complex>
#include <map>

#include "qss/qcore/bases.hpp"
#include "qss/qcore/bell.hpp"
#include "qss/qcore/registry.hpp"
#include "qss/rng.hpp"

using namespace qss::qcore;
using qss::Rng;

namespace {

constexpr std::array<MeasBasis, 3> kAllBases = {MeasBasis::Z, MeasBasis::X,
                                                MeasBasis::Y};
constexpr std::array<BellSet, 2> kAllSets = {BellSet::Standard,
                                             BellSet::Rotated};
constexpr std::array<BellMember, 4> kAllMembers = {
    BellMember::PhiPlus, BellMember::PhiMinus, BellMember::PsiPlus,
    BellMember::PsiMinus};

Amp dot(const std::array<Amp, 2>& a, const std::array<Amp, 2>& b) {
  return std::conj(a[0]) * b[0] + std::conj(a[1]) * b[1];
}

}  // namespace

TEST_CASE("basis eigenvectors are orthonormal") {
  for (const MeasBasis b : kAllBases) {
    const auto e0 = basis_eigvec(b, 0);
    const auto e1 = basis_eigvec(b, 1);
    CHECK(std::abs(dot(e0, e0) - Amp(1, 0)) < 1e-12);
    CHECK(std::abs(dot(e1, e1) - Amp(1, 0)) < 1e-12);
    CHECK(std::abs(dot(e0, e1)) < 1e-12);
  }
  CHECK_THROWS_AS(basis_eigvec(MeasBasis::Z, 2), std::invalid_argument);
}

TEST_CASE("basis eigenvector conventions") {
  CHECK(basis_eigvec(MeasBasis::Z, 0)[0] == Amp(1, 0));
  CHECK(basis_eigvec(MeasBasis::Z, 1)[1] == Amp(1, 0));
  const double s = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(basis_eigvec(MeasBasis::X, 1)[1] - Amp(-s, 0)) < 1e-12);
  CHECK(std::abs(basis_eigvec(MeasBasis::Y, 0)[1] - Amp(0, s)) < 1e-12);
  CHECK(std::abs(basis_eigvec(MeasBasis::Y, 1)[1] - Amp(0, -s)) < 1e-12);
}

TEST_CASE("basis names and indexing round-trip") {
  for (int i = 0; i < kBasisCount; ++i) {
    CHECK(basis_index(basis_from_index(i)) == i);
  }
  CHECK(basis_name(MeasBasis::Z) == doctest::String("Z"));
  CHECK_THROWS_AS(basis_from_index(3), std::invalid_argument);
}

TEST_CASE("decoy states pair up with their bases") {
  for (int i = 0; i < kDecoyStateCount; ++i) {
    CHECK(basis_index(decoy_basis(i)) == i / 2);
    CHECK(decoy_eigen_index(i) == i % 2);
    const StateVector s = prepare_decoy(i);
    const auto e = basis_eigvec(decoy_basis(i), decoy_eigen_index(i));
    CHECK(std::abs(s.amp(0) - e[0]) < 1e-12);
    CHECK(std::abs(s.amp(1) - e[1]) < 1e-12);
  }
  CHECK_THROWS_AS(prepare_decoy(6), std::invalid_argument);
  CHECK_THROWS_AS(prepare_decoy(-1), std::invalid_argument);
}

TEST_CASE("set members are orthonormal within each set") {
  for (const BellSet set : kAllSets) {
    for (const BellMember a : kAllMembers) {
      for (const BellMember b : kAllMembers) {
        const double f = fidelity(bell_state(set, a), bell_state(set, b));
        CHECK(f == doctest::Approx(a == b ? 1.0 : 0.0).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("member labels match indices and round-trip") {
  for (int i = 0; i < kBellMemberCount; ++i) {
    const BellMember m = member_from_index(i);
    CHECK(member_index(m) == i);
    CHECK(member_label_bits(m) == i);
    CHECK(member_from_label(i) == m);
  }
  CHECK_THROWS_AS(member_from_index(4), std::invalid_argument);
  CHECK(member_name(BellSet::Standard, BellMember::PhiPlus) ==
        doctest::String("phi+"));
  CHECK(member_name(BellSet::Rotated, BellMember::PsiMinus) ==
        doctest::String("PSI-"));
}

TEST_CASE("canonical standard amplitudes") {
  const double s = 1.0 / std::sqrt(2.0);
  const auto& phi_plus = bell_amps(BellSet::Standard, BellMember::PhiPlus);
  CHECK(std::abs(phi_plus[0] - Amp(s, 0)) < 1e-12);
  CHECK(std::abs(phi_plus[3] - Amp(s, 0)) < 1e-12);
  const auto& psi_minus = bell_amps(BellSet::Standard, BellMember::PsiMinus);
  CHECK(std::abs(psi_minus[1] - Amp(s, 0)) < 1e-12);
  CHECK(std::abs(psi_minus[2] - Amp(-s, 0)) < 1e-12);
}

TEST_CASE("joint measurement distributions follow the state, exhaustively") {
  // For every set member and every basis pair, the four joint outcome
  // probabilities from sequential projection match the direct Born values
  // and sum to one.
  for (const BellSet set : kAllSets) {
    for (const BellMember m : kAllMembers) {
      const StateVector s = bell_state(set, m);
      for (const MeasBasis ba : kAllBases) {
        for (const MeasBasis bb : kAllBases) {
          double total = 0.0;
          for (int oa = 0; oa < 2; ++oa) {
            std::vector<Amp> rest;
            const double pa = s.project_out(0, basis_eigvec(ba, oa), &rest);
            for (int ob = 0; ob < 2; ++ob) {
              // Conditional probability from the collapsed remainder.
              double pb = 0.0;
              if (pa > 1e-15) {
                StateVector cond(1, rest);
                cond.renormalize();
                std::vector<Amp> scalar;
                pb = cond.project_out(0, basis_eigvec(bb, ob), &scalar);
              }
              // Direct Born value for the joint outcome.
              const auto ea = basis_eigvec(ba, oa);
              const auto eb = basis_eigvec(bb, ob);
              Amp amp(0, 0);
              for (int i = 0; i < 2; ++i) {
                for (int j = 0; j < 2; ++j) {
                  amp += std::conj(ea[i]) * std::conj(eb[j]) *
                         s.amp(std::size_t(i) * 2 + j);
                }
              }
              CHECK(pa * pb == doctest::Approx(std::norm(amp)).epsilon(1e-10));
              total += pa * pb;
            }
          }
          CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
        }
      }
    }
  }
}

TEST_CASE("sampled single-photon statistics of an entangled pair") {
  // Measuring one half of the Standard phi+ in any basis is a fair coin;
  // same-basis joint outcomes correlate in Z and X and anticorrelate in Y.
  const int n = 100000;
  Rng rng(12345);
  std::map<int, int> ones;
  std::map<int, int> agree;
  for (int i = 0; i < n; ++i) {
    for (const MeasBasis b : kAllBases) {
      PhotonRegistry reg;
      const auto [pb, pc] = reg.create_bell(BellSet::Standard,
                                            BellMember::PhiPlus);
      const int ob = reg.measure_single(pb, b, rng);
      const int oc = reg.measure_single(pc, b, rng);
      ones[basis_index(b)] += ob;
      agree[basis_index(b)] += ob == oc ? 1 : 0;
    }
  }
  const double sigma = std::sqrt(0.25 / n);
  for (const MeasBasis b : kAllBases) {
    const double frac = double(ones[basis_index(b)]) / n;
    CHECK(std::abs(frac - 0.5) < 5 * sigma);
  }
  CHECK(agree[basis_index(MeasBasis::Z)] == n);
  CHECK(agree[basis_index(MeasBasis::X)] == n);
  CHECK(agree[basis_index(MeasBasis::Y)] == 0);
}

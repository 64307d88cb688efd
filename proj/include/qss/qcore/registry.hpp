#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "qss/qcore/bases.hpp"
#include "qss/qcore/bell.hpp"
#include "qss/qcore/statevector.hpp"
#include "qss/rng.hpp"

namespace qss::qcore {

using PhotonId = std::uint64_t;
using StateHandle = std::uint64_t;

struct PhotonRef {
  StateHandle state;
  int qubit;
};

// Owns every in-flight photon and the joint states entangling them. Photons
// keep stable ids across operations; joint states merge lazily when a
// two-photon measurement spans separate states, and shrink as photons are
// measured out. Measurements retire the photons they consume.
class PhotonRegistry {
 public:
  // Registers one photon per qubit of `state`; returns their ids in qubit
  // order (photon [0] is qubit 0, the most significant index bit).
  std::vector<PhotonId> create(const StateVector& state);
  PhotonId create_single(const std::array<Amp, 2>& amps);
  // Returns {B photon, C photon}.
  std::pair<PhotonId, PhotonId> create_bell(BellSet set, BellMember member);

  bool alive(PhotonId photon) const;
  PhotonRef ref(PhotonId photon) const;
  const StateVector& state_of(PhotonId photon) const;

  void apply_local(PhotonId photon, const Mat2& m);

  // Measures the photon in `basis`; returns the eigenvector index (0 = "+",
  // 1 = "-") and retires the photon.
  int measure_single(PhotonId photon, MeasBasis basis, Rng& rng);
  // Outcome probabilities of the same measurement, without collapsing.
  std::array<double, 2> project_single(PhotonId photon, MeasBasis basis) const;

  // Joint measurement of (a, b) in a Bell-type set, with `a` in the photon-B
  // slot of the member's amplitudes. Retires both photons.
  BellMember bell_measure(PhotonId a, PhotonId b, BellSet set, Rng& rng);
  // Outcome probabilities of the same measurement, without collapsing.
  std::array<double, 4> project_bell(PhotonId a, PhotonId b, BellSet set) const;

  // Removes the photon from its joint state (a Z measurement whose result is
  // thrown away), e.g. for photons lost in transit.
  void discard(PhotonId photon, Rng& rng);

  std::size_t live_photons() const { return photons_.size(); }
  std::size_t live_state_count() const { return states_.size(); }
  std::vector<PhotonId> live_photon_ids() const;

 private:
  struct StateRecord {
    StateVector state;
    std::vector<PhotonId> photons;  // position == qubit index
  };

  StateRecord& record_of(PhotonId photon);
  const StateRecord& record_of(PhotonId photon) const;
  // Re-tensors two records into one; returns the surviving handle.
  StateHandle merge(StateHandle a, StateHandle b);
  // Installs `rest` (with `removed` qubit positions gone) as the record's new
  // state, retiring the removed photons and renumbering the survivors.
  void collapse(StateHandle handle, std::vector<Amp> rest,
                std::vector<int> removed);

  std::map<StateHandle, StateRecord> states_;
  std::map<PhotonId, PhotonRef> photons_;  // live photons only
  PhotonId next_photon_ = 1;
  StateHandle next_state_ = 1;
};

}  // namespace qss::qcore

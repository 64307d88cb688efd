#include "qss/qcore/registry.hpp"

#include <algorithm>
#include <stdexcept>

namespace qss::qcore {

std::vector<PhotonId> PhotonRegistry::create(const StateVector& state) {
  const StateHandle h = next_state_++;
  StateRecord rec{state, {}};
  std::vector<PhotonId> ids;
  ids.reserve(state.n_qubits());
  for (int q = 0; q < state.n_qubits(); ++q) {
    const PhotonId p = next_photon_++;
    rec.photons.push_back(p);
    photons_[p] = PhotonRef{h, q};
    ids.push_back(p);
  }
  states_.emplace(h, std::move(rec));
  return ids;
}

PhotonId PhotonRegistry::create_single(const std::array<Amp, 2>& amps) {
  return create(StateVector(1, {amps[0], amps[1]}))[0];
}

std::pair<PhotonId, PhotonId> PhotonRegistry::create_bell(BellSet set,
                                                          BellMember member) {
  auto ids = create(bell_state(set, member));
  return {ids[0], ids[1]};
}

bool PhotonRegistry::alive(PhotonId photon) const {
  return photons_.count(photon) != 0;
}

PhotonRef PhotonRegistry::ref(PhotonId photon) const {
  const auto it = photons_.find(photon);
  if (it == photons_.end()) {
    throw std::invalid_argument("photon is not alive");
  }
  return it->second;
}

const StateVector& PhotonRegistry::state_of(PhotonId photon) const {
  return record_of(photon).state;
}

PhotonRegistry::StateRecord& PhotonRegistry::record_of(PhotonId photon) {
  return states_.at(ref(photon).state);
}

const PhotonRegistry::StateRecord& PhotonRegistry::record_of(
    PhotonId photon) const {
  return states_.at(ref(photon).state);
}

void PhotonRegistry::apply_local(PhotonId photon, const Mat2& m) {
  const PhotonRef r = ref(photon);
  states_.at(r.state).state.apply_single(m, r.qubit);
}

void PhotonRegistry::collapse(StateHandle handle, std::vector<Amp> rest,
                              std::vector<int> removed) {
  StateRecord& rec = states_.at(handle);
  std::sort(removed.begin(), removed.end(), std::greater<int>());
  for (int q : removed) {
    photons_.erase(rec.photons[q]);
    rec.photons.erase(rec.photons.begin() + q);
  }
  if (rec.photons.empty()) {
    states_.erase(handle);
    return;
  }
  StateVector next(static_cast<int>(rec.photons.size()), std::move(rest));
  next.renormalize();
  rec.state = std::move(next);
  for (int q = 0; q < static_cast<int>(rec.photons.size()); ++q) {
    photons_[rec.photons[q]] = PhotonRef{handle, q};
  }
}

int PhotonRegistry::measure_single(PhotonId photon, MeasBasis basis,
                                   Rng& rng) {
  const PhotonRef r = ref(photon);
  const StateVector& sv = states_.at(r.state).state;
  std::vector<Amp> rest0;
  const double p0 = sv.project_out(r.qubit, basis_eigvec(basis, 0), &rest0);
  const int outcome = rng.uniform() < p0 ? 0 : 1;
  std::vector<Amp> rest;
  if (outcome == 0) {
    rest = std::move(rest0);
  } else {
    sv.project_out(r.qubit, basis_eigvec(basis, 1), &rest);
  }
  collapse(r.state, std::move(rest), {r.qubit});
  return outcome;
}

std::array<double, 2> PhotonRegistry::project_single(PhotonId photon,
                                                     MeasBasis basis) const {
  const PhotonRef r = ref(photon);
  const StateVector& sv = states_.at(r.state).state;
  std::vector<Amp> rest;
  std::array<double, 2> probs{};
  for (int e = 0; e < 2; ++e) {
    probs[e] = sv.project_out(r.qubit, basis_eigvec(basis, e), &rest);
  }
  return probs;
}

StateHandle PhotonRegistry::merge(StateHandle a, StateHandle b) {
  StateRecord& ra = states_.at(a);
  StateRecord& rb = states_.at(b);
  const int na = ra.state.n_qubits();
  ra.state = StateVector::tensor(ra.state, rb.state);
  for (std::size_t q = 0; q < rb.photons.size(); ++q) {
    const PhotonId p = rb.photons[q];
    ra.photons.push_back(p);
    photons_[p] = PhotonRef{a, na + static_cast<int>(q)};
  }
  states_.erase(b);
  return a;
}

BellMember PhotonRegistry::bell_measure(PhotonId a, PhotonId b, BellSet set,
                                        Rng& rng) {
  if (a == b) throw std::invalid_argument("joint measurement needs two photons");
  PhotonRef ra = ref(a);
  PhotonRef rb = ref(b);
  if (ra.state != rb.state) {
    merge(ra.state, rb.state);
    ra = ref(a);
    rb = ref(b);
  }
  const StateVector& sv = states_.at(ra.state).state;
  std::array<double, 4> probs{};
  std::vector<Amp> rests[4];
  for (int m = 0; m < kBellMemberCount; ++m) {
    probs[m] = sv.project_out_pair(ra.qubit, rb.qubit,
                                   bell_amps(set, member_from_index(m)),
                                   &rests[m]);
  }
  const int outcome = rng.sample_discrete(probs.data(), kBellMemberCount);
  collapse(ra.state, std::move(rests[outcome]), {ra.qubit, rb.qubit});
  return member_from_index(outcome);
}

std::array<double, 4> PhotonRegistry::project_bell(PhotonId a, PhotonId b,
                                                   BellSet set) const {
  if (a == b) throw std::invalid_argument("joint measurement needs two photons");
  const PhotonRef ra = ref(a);
  const PhotonRef rb = ref(b);
  std::array<double, 4> probs{};
  std::vector<Amp> rest;
  if (ra.state == rb.state) {
    const StateVector& sv = states_.at(ra.state).state;
    for (int m = 0; m < kBellMemberCount; ++m) {
      probs[m] = sv.project_out_pair(ra.qubit, rb.qubit,
                                     bell_amps(set, member_from_index(m)),
                                     &rest);
    }
    return probs;
  }
  const StateVector& sa = states_.at(ra.state).state;
  const StateVector& sb = states_.at(rb.state).state;
  const StateVector joint = StateVector::tensor(sa, sb);
  const int qa = ra.qubit;
  const int qb = sa.n_qubits() + rb.qubit;
  for (int m = 0; m < kBellMemberCount; ++m) {
    probs[m] = joint.project_out_pair(qa, qb,
                                      bell_amps(set, member_from_index(m)),
                                      &rest);
  }
  return probs;
}

void PhotonRegistry::discard(PhotonId photon, Rng& rng) {
  measure_single(photon, MeasBasis::Z, rng);
}

std::vector<PhotonId> PhotonRegistry::live_photon_ids() const {
  std::vector<PhotonId> ids;
  ids.reserve(photons_.size());
  for (const auto& [p, r] : photons_) ids.push_back(p);
  return ids;
}

}  // namespace qss::qcore

#pragma once

#include "qss/qcore/statevector.hpp"

namespace qss::qcore {

// The two mutually nonorthogonal Bell-type measurement sets used by the
// protocol. The Standard set is the usual Bell basis (canonical in Z x Z);
// the Rotated set is a second orthonormal entangled basis whose canonical
// form is written in X (photon B) x Z (photon C).
enum class BellSet { Standard = 0, Rotated = 1 };

enum class BellMember {
  PhiPlus = 0,
  PhiMinus = 1,
  PsiPlus = 2,
  PsiMinus = 3,
};

inline constexpr int kBellMemberCount = 4;
inline constexpr int kBellSetCount = 2;

// Canonical amplitudes of a set member over (B, C), order |00>,|01>,|10>,|11>.
const std::array<Amp, 4>& bell_amps(BellSet set, BellMember member);
StateVector bell_state(BellSet set, BellMember member);

int member_index(BellMember m);
BellMember member_from_index(int index);

// Two-bit member label used for key arithmetic: high bit is the letter
// (phi/PHI = 0, psi/PSI = 1), low bit is the sign (+ = 0, - = 1). With the
// member ordering above the label equals the member index.
int member_label_bits(BellMember m);
BellMember member_from_label(int bits);

const char* member_name(BellSet set, BellMember m);  // "phi+", "PHI-", ...
const char* set_name(BellSet set);

}  // namespace qss::qcore

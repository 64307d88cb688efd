#include "qss/qcore/bell.hpp"

#include <cmath>
#include <stdexcept>

namespace qss::qcore {

namespace {

const double kS = 1.0 / std::sqrt(2.0);

// Standard set, canonical in Z x Z:
//   phi+- = (|00> +- |11>)/sqrt(2),  psi+- = (|01> +- |10>)/sqrt(2)
const std::array<std::array<Amp, 4>, 4> kStandard = {{
    {Amp{kS, 0}, Amp{0, 0}, Amp{0, 0}, Amp{kS, 0}},
    {Amp{kS, 0}, Amp{0, 0}, Amp{0, 0}, Amp{-kS, 0}},
    {Amp{0, 0}, Amp{kS, 0}, Amp{kS, 0}, Amp{0, 0}},
    {Amp{0, 0}, Amp{kS, 0}, Amp{-kS, 0}, Amp{0, 0}},
}};

// Rotated set, canonical in X (B) x Z (C):
//   PHI+- = (|+x>|+z> +- i|-x>|-z>)/sqrt(2)
//   PSI+- = (|+x>|-z> +- i|-x>|+z>)/sqrt(2)
// expanded into the computational basis.
const std::array<std::array<Amp, 4>, 4> kRotated = {{
    {Amp{0.5, 0}, Amp{0, 0.5}, Amp{0.5, 0}, Amp{0, -0.5}},
    {Amp{0.5, 0}, Amp{0, -0.5}, Amp{0.5, 0}, Amp{0, 0.5}},
    {Amp{0, 0.5}, Amp{0.5, 0}, Amp{0, -0.5}, Amp{0.5, 0}},
    {Amp{0, -0.5}, Amp{0.5, 0}, Amp{0, 0.5}, Amp{0.5, 0}},
}};

}  // namespace

const std::array<Amp, 4>& bell_amps(BellSet set, BellMember member) {
  const int i = member_index(member);
  return set == BellSet::Standard ? kStandard[i] : kRotated[i];
}

StateVector bell_state(BellSet set, BellMember member) {
  const auto& a = bell_amps(set, member);
  return StateVector(2, {a[0], a[1], a[2], a[3]});
}

int member_index(BellMember m) { return static_cast<int>(m); }

BellMember member_from_index(int index) {
  if (index < 0 || index >= kBellMemberCount) {
    throw std::invalid_argument("member index out of range");
  }
  return static_cast<BellMember>(index);
}

int member_label_bits(BellMember m) { return member_index(m); }

BellMember member_from_label(int bits) { return member_from_index(bits); }

const char* member_name(BellSet set, BellMember m) {
  static const char* kStandardNames[4] = {"phi+", "phi-", "psi+", "psi-"};
  static const char* kRotatedNames[4] = {"PHI+", "PHI-", "PSI+", "PSI-"};
  const int i = member_index(m);
  return set == BellSet::Standard ? kStandardNames[i] : kRotatedNames[i];
}

const char* set_name(BellSet set) {
  return set == BellSet::Standard ? "standard" : "rotated";
}

}  // namespace qss::qcore

#include "qss/qcore/unitaries.hpp"

#include <stdexcept>

namespace qss::qcore {

Mat2 unitary_matrix(UnitaryCode u) {
  switch (u) {
    case UnitaryCode::U0:
      return {Amp{1, 0}, Amp{0, 0}, Amp{0, 0}, Amp{1, 0}};
    case UnitaryCode::U1:
      return {Amp{1, 0}, Amp{0, 0}, Amp{0, 0}, Amp{-1, 0}};
    case UnitaryCode::U2:
      return {Amp{0, 0}, Amp{1, 0}, Amp{1, 0}, Amp{0, 0}};
    case UnitaryCode::U3:
      // |0><1| - |1><0|, i.e. i * sigma_y
      return {Amp{0, 0}, Amp{1, 0}, Amp{-1, 0}, Amp{0, 0}};
  }
  throw std::invalid_argument("unknown unitary");
}

int unitary_bits(UnitaryCode u) { return static_cast<int>(u); }

UnitaryCode unitary_from_bits(int bits) {
  if (bits < 0 || bits >= kUnitaryCount) {
    throw std::invalid_argument("unitary code out of range");
  }
  return static_cast<UnitaryCode>(bits);
}

const char* unitary_name(UnitaryCode u) {
  static const char* kNames[kUnitaryCount] = {"U0", "U1", "U2", "U3"};
  return kNames[static_cast<int>(u)];
}

}  // namespace qss::qcore

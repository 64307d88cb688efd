#pragma once

#include "qss/qcore/statevector.hpp"

namespace qss::qcore {

// The four local encoding operations and their two-bit key codes:
//   U0 = I              -> 00
//   U1 = sigma_z        -> 01
//   U2 = sigma_x        -> 10
//   U3 = i * sigma_y    -> 11
// With this assignment the code of a product of operations is the XOR of
// the individual codes (up to a global phase on the state).
enum class UnitaryCode { U0 = 0, U1 = 1, U2 = 2, U3 = 3 };

inline constexpr int kUnitaryCount = 4;

Mat2 unitary_matrix(UnitaryCode u);
int unitary_bits(UnitaryCode u);  // the two-bit key code, 0..3
UnitaryCode unitary_from_bits(int bits);
const char* unitary_name(UnitaryCode u);

}  // namespace qss::qcore

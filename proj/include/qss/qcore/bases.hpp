#pragma once

#include "qss/qcore/statevector.hpp"

namespace qss::qcore {

enum class MeasBasis { Z = 0, X = 1, Y = 2 };

inline constexpr int kBasisCount = 3;

// Eigenvector `which` (0 = "+", 1 = "-") of the basis observable:
//   |+z> = |0>, |-z> = |1>
//   |+x> = (|0> + |1>)/sqrt(2), |-x> = (|0> - |1>)/sqrt(2)
//   |+y> = (|0> + i|1>)/sqrt(2), |-y> = (|0> - i|1>)/sqrt(2)
std::array<Amp, 2> basis_eigvec(MeasBasis basis, int which);

const char* basis_name(MeasBasis basis);
int basis_index(MeasBasis basis);
MeasBasis basis_from_index(int index);

// Decoy photon states, in a fixed order:
//   0: |0>   1: |1>   2: |+x>   3: |-x>   4: |+y>   5: |-y>
inline constexpr int kDecoyStateCount = 6;

StateVector prepare_decoy(int index);
MeasBasis decoy_basis(int index);
int decoy_eigen_index(int index);  // 0 or 1 within decoy_basis(index)
const char* decoy_name(int index);

}  // namespace qss::qcore

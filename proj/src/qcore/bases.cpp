#include "qss/qcore/bases.hpp"

#include <cmath>
#include <stdexcept>

namespace qss::qcore {

namespace {
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
}

std::array<Amp, 2> basis_eigvec(MeasBasis basis, int which) {
  if (which != 0 && which != 1) {
    throw std::invalid_argument("eigenvector selector must be 0 or 1");
  }
  const double s = which == 0 ? 1.0 : -1.0;
  switch (basis) {
    case MeasBasis::Z:
      return which == 0 ? std::array<Amp, 2>{Amp{1, 0}, Amp{0, 0}}
                        : std::array<Amp, 2>{Amp{0, 0}, Amp{1, 0}};
    case MeasBasis::X:
      return {Amp{kInvSqrt2, 0}, Amp{s * kInvSqrt2, 0}};
    case MeasBasis::Y:
      return {Amp{kInvSqrt2, 0}, Amp{0, s * kInvSqrt2}};
  }
  throw std::invalid_argument("unknown basis");
}

const char* basis_name(MeasBasis basis) {
  switch (basis) {
    case MeasBasis::Z: return "Z";
    case MeasBasis::X: return "X";
    case MeasBasis::Y: return "Y";
  }
  return "?";
}

int basis_index(MeasBasis basis) { return static_cast<int>(basis); }

MeasBasis basis_from_index(int index) {
  if (index < 0 || index >= kBasisCount) {
    throw std::invalid_argument("basis index out of range");
  }
  return static_cast<MeasBasis>(index);
}

StateVector prepare_decoy(int index) {
  const auto e = basis_eigvec(decoy_basis(index), decoy_eigen_index(index));
  return StateVector(1, {e[0], e[1]});
}

MeasBasis decoy_basis(int index) {
  if (index < 0 || index >= kDecoyStateCount) {
    throw std::invalid_argument("decoy state index out of range");
  }
  return static_cast<MeasBasis>(index / 2);
}

int decoy_eigen_index(int index) {
  if (index < 0 || index >= kDecoyStateCount) {
    throw std::invalid_argument("decoy state index out of range");
  }
  return index % 2;
}

const char* decoy_name(int index) {
  static const char* kNames[kDecoyStateCount] = {"|0>",  "|1>",  "|+x>",
                                                 "|-x>", "|+y>", "|-y>"};
  if (index < 0 || index >= kDecoyStateCount) {
    throw std::invalid_argument("decoy state index out of range");
  }
  return kNames[index];
}

}  // namespace qss::qcore

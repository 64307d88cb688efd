#pragma once

#include <array>
#include <vector>

#include "qss/qcore/statevector.hpp"

namespace qss::qcore {

// Dense 4x4 density operator for a two-qubit system, row-major.
class DensityMatrix2 {
 public:
  DensityMatrix2();  // zero matrix

  static DensityMatrix2 pure(const StateVector& state);
  // Weighted mixture of pure two-qubit states. Weights must be non-negative;
  // they are normalized to sum to one.
  static DensityMatrix2 average(const std::vector<StateVector>& states,
                                const std::vector<double>& weights);
  static DensityMatrix2 uniform_average(const std::vector<StateVector>& states);

  Amp at(int row, int col) const { return m_[row * 4 + col]; }
  Amp& at(int row, int col) { return m_[row * 4 + col]; }

  double trace_real() const;
  double max_imag_trace() const;
  bool is_hermitian(double tol) const;
  // Eigenvalues in ascending order (valid for Hermitian input).
  std::array<double, 4> eigenvalues() const;
  bool is_positive_semidefinite(double tol) const;
  double max_offdiag_abs() const;
  double max_diag_deviation(double value) const;

 private:
  std::array<Amp, 16> m_;
};

}  // namespace qss::qcore

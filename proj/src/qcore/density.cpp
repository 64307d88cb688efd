#include "qss/qcore/density.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qss::qcore {

DensityMatrix2::DensityMatrix2() : m_{} {}

DensityMatrix2 DensityMatrix2::pure(const StateVector& state) {
  if (state.n_qubits() != 2) {
    throw std::invalid_argument("density matrix expects a two-qubit state");
  }
  DensityMatrix2 rho;
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      rho.at(r, c) = state.amp(r) * std::conj(state.amp(c));
    }
  }
  return rho;
}

DensityMatrix2 DensityMatrix2::average(const std::vector<StateVector>& states,
                                       const std::vector<double>& weights) {
  if (states.empty() || states.size() != weights.size()) {
    throw std::invalid_argument("mismatched states and weights");
  }
  double total = 0;
  for (double w : weights) {
    if (w < 0) throw std::invalid_argument("negative weight");
    total += w;
  }
  if (total <= 0) throw std::invalid_argument("weights sum to zero");
  DensityMatrix2 rho;
  for (size_t i = 0; i < states.size(); ++i) {
    const DensityMatrix2 p = pure(states[i]);
    const double w = weights[i] / total;
    for (int k = 0; k < 16; ++k) {
      rho.m_[k] += w * p.m_[k];
    }
  }
  return rho;
}

DensityMatrix2 DensityMatrix2::uniform_average(
    const std::vector<StateVector>& states) {
  return average(states, std::vector<double>(states.size(), 1.0));
}

double DensityMatrix2::trace_real() const {
  double t = 0;
  for (int i = 0; i < 4; ++i) t += at(i, i).real();
  return t;
}

double DensityMatrix2::max_imag_trace() const {
  double t = 0;
  for (int i = 0; i < 4; ++i) t = std::max(t, std::abs(at(i, i).imag()));
  return t;
}

bool DensityMatrix2::is_hermitian(double tol) const {
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      if (std::abs(at(r, c) - std::conj(at(c, r))) > tol) return false;
    }
  }
  return true;
}

std::array<double, 4> DensityMatrix2::eigenvalues() const {
  Eigen::Matrix4cd m;
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      m(r, c) = at(r, c);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(m);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigenvalue solve failed");
  }
  std::array<double, 4> out{};
  for (int i = 0; i < 4; ++i) out[i] = solver.eigenvalues()(i);
  return out;
}

bool DensityMatrix2::is_positive_semidefinite(double tol) const {
  const auto ev = eigenvalues();
  return ev[0] >= -tol;
}

double DensityMatrix2::max_offdiag_abs() const {
  double m = 0;
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      if (r != c) m = std::max(m, std::abs(at(r, c)));
    }
  }
  return m;
}

double DensityMatrix2::max_diag_deviation(double value) const {
  double m = 0;
  for (int i = 0; i < 4; ++i) {
    m = std::max(m, std::abs(at(i, i) - Amp{value, 0}));
  }
  return m;
}

}  // namespace qss::qcore

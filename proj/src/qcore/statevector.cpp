#include "qss/qcore/statevector.hpp"

#include <cmath>
#include <stdexcept>

namespace qss::qcore {

namespace {

// Inserts bit value `b` at bit position `pos` (LSB = 0) of the packed index.
std::size_t insert_bit(std::size_t j, int pos, std::size_t b) {
  const std::size_t low = j & ((std::size_t{1} << pos) - 1);
  const std::size_t high = j >> pos;
  return (high << (pos + 1)) | (b << pos) | low;
}

}  // namespace

StateVector::StateVector(int n_qubits)
    : n_qubits_(n_qubits), amps_(std::size_t{1} << n_qubits, Amp{0.0, 0.0}) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw std::invalid_argument("qubit count out of range");
  }
  amps_[0] = Amp{1.0, 0.0};
}

StateVector::StateVector(int n_qubits, std::vector<Amp> amps)
    : n_qubits_(n_qubits), amps_(std::move(amps)) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw std::invalid_argument("qubit count out of range");
  }
  if (amps_.size() != (std::size_t{1} << n_qubits)) {
    throw std::invalid_argument("amplitude count does not match qubit count");
  }
  validate();
}

void StateVector::validate() const {
  for (const Amp& a : amps_) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
      throw std::invalid_argument("non-finite amplitude");
    }
  }
}

double StateVector::norm_sq() const {
  double s = 0.0;
  for (const Amp& a : amps_) s += std::norm(a);
  return s;
}

void StateVector::renormalize() {
  const double n = std::sqrt(norm_sq());
  if (n <= 0.0) throw std::runtime_error("cannot renormalize null vector");
  for (Amp& a : amps_) a /= n;
}

void StateVector::apply_single(const Mat2& m, int qubit) {
  if (qubit < 0 || qubit >= n_qubits_) {
    throw std::invalid_argument("qubit index out of range");
  }
  const int pos = n_qubits_ - 1 - qubit;
  const std::size_t mask = std::size_t{1} << pos;
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if (i & mask) continue;
    const Amp a0 = amps_[i];
    const Amp a1 = amps_[i | mask];
    amps_[i] = m[0] * a0 + m[1] * a1;
    amps_[i | mask] = m[2] * a0 + m[3] * a1;
  }
  validate();
}

double StateVector::project_out(int qubit, const std::array<Amp, 2>& eigvec,
                                std::vector<Amp>* rest) const {
  if (qubit < 0 || qubit >= n_qubits_) {
    throw std::invalid_argument("qubit index out of range");
  }
  const int pos = n_qubits_ - 1 - qubit;
  const std::size_t half = amps_.size() / 2;
  rest->assign(half, Amp{0.0, 0.0});
  double prob = 0.0;
  for (std::size_t j = 0; j < half; ++j) {
    const Amp v = std::conj(eigvec[0]) * amps_[insert_bit(j, pos, 0)] +
                  std::conj(eigvec[1]) * amps_[insert_bit(j, pos, 1)];
    (*rest)[j] = v;
    prob += std::norm(v);
  }
  return prob;
}

double StateVector::project_out_pair(int qubit_a, int qubit_b,
                                     const std::array<Amp, 4>& basis4,
                                     std::vector<Amp>* rest) const {
  if (qubit_a == qubit_b) throw std::invalid_argument("identical qubits");
  if (qubit_a < 0 || qubit_a >= n_qubits_ || qubit_b < 0 ||
      qubit_b >= n_qubits_) {
    throw std::invalid_argument("qubit index out of range");
  }
  const int pos_a = n_qubits_ - 1 - qubit_a;
  const int pos_b = n_qubits_ - 1 - qubit_b;
  const int lo = pos_a < pos_b ? pos_a : pos_b;
  const int hi = pos_a < pos_b ? pos_b : pos_a;
  const std::size_t quarter = amps_.size() / 4;
  rest->assign(quarter, Amp{0.0, 0.0});
  double prob = 0.0;
  for (std::size_t j = 0; j < quarter; ++j) {
    Amp v{0.0, 0.0};
    for (std::size_t ba = 0; ba < 2; ++ba) {
      for (std::size_t bb = 0; bb < 2; ++bb) {
        // Insert the lower bit position first so the higher one lands on
        // its final slot.
        const std::size_t bit_lo = (pos_a == lo) ? ba : bb;
        const std::size_t bit_hi = (pos_a == lo) ? bb : ba;
        std::size_t idx = insert_bit(j, lo, bit_lo);
        idx = insert_bit(idx, hi, bit_hi);
        v += std::conj(basis4[(ba << 1) | bb]) * amps_[idx];
      }
    }
    (*rest)[j] = v;
    prob += std::norm(v);
  }
  return prob;
}

StateVector StateVector::tensor(const StateVector& a, const StateVector& b) {
  if (a.n_qubits_ + b.n_qubits_ > kMaxQubits) {
    throw std::invalid_argument("tensor product exceeds qubit cap");
  }
  std::vector<Amp> out(a.amps_.size() * b.amps_.size());
  for (std::size_t i = 0; i < a.amps_.size(); ++i) {
    for (std::size_t j = 0; j < b.amps_.size(); ++j) {
      out[i * b.amps_.size() + j] = a.amps_[i] * b.amps_[j];
    }
  }
  return StateVector(a.n_qubits_ + b.n_qubits_, std::move(out));
}

Amp inner_product(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("dimension mismatch");
  Amp s{0.0, 0.0};
  for (std::size_t i = 0; i < a.dim(); ++i) {
    s += std::conj(a.amp(i)) * b.amp(i);
  }
  return s;
}

double fidelity(const StateVector& a, const StateVector& b) {
  return std::norm(inner_product(a, b));
}

bool equal_up_to_phase(const StateVector& a, const StateVector& b,
                       double tol) {
  return fidelity(a, b) >= 1.0 - tol;
}

bool equal_with_phase(const StateVector& a, const StateVector& b, Amp phase,
                      double tol) {
  if (a.dim() != b.dim()) throw std::invalid_argument("dimension mismatch");
  for (std::size_t i = 0; i < a.dim(); ++i) {
    if (std::abs(a.amp(i) - phase * b.amp(i)) > tol) return false;
  }
  return true;
}

Amp relative_phase(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("dimension mismatch");
  std::size_t k = 0;
  double best = -1.0;
  for (std::size_t i = 0; i < b.dim(); ++i) {
    const double m = std::abs(b.amp(i));
    if (m > best) {
      best = m;
      k = i;
    }
  }
  if (best <= 0.0) throw std::invalid_argument("null reference vector");
  return a.amp(k) / b.amp(k);
}

}  // namespace qss::qcore

#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

namespace qss::qcore {

using Amp = std::complex<double>;
using Mat2 = std::array<Amp, 4>;  // row-major 2x2

inline constexpr int kMaxQubits = 8;
inline constexpr double kAlgebraTol = 1e-12;

// Exact statevector over 1..8 qubits.
//
// Index convention: qubit 0 is the MOST significant bit of the basis-state
// index. For two qubits the amplitude order is |00>, |01>, |10>, |11> with
// qubit 0 owning the left bit. In a two-photon pair, photon B is qubit 0
// and photon C is qubit 1, so amps() = {a00, a01, a10, a11} reads as
// a(bc) with b = B's bit.
class StateVector {
 public:
  explicit StateVector(int n_qubits);  // |0...0>
  StateVector(int n_qubits, std::vector<Amp> amps);

  int n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return amps_.size(); }
  const std::vector<Amp>& amps() const { return amps_; }
  Amp amp(std::size_t index) const { return amps_[index]; }

  double norm_sq() const;
  void renormalize();

  // In-place single-qubit matrix application (matrix acting on the qubit's
  // {|0>, |1>} pair, all other indices fixed).
  void apply_single(const Mat2& m, int qubit);

  // Applies <e| on `qubit` and writes the unnormalized remainder over the
  // other qubits into `rest` (size dim()/2; a single scalar for one qubit).
  // Returns the branch probability.
  double project_out(int qubit, const std::array<Amp, 2>& eigvec,
                     std::vector<Amp>* rest) const;

  // Same for a two-qubit projector onto `basis4`, which is indexed by
  // (bit_of_qubit_a << 1) | bit_of_qubit_b.
  double project_out_pair(int qubit_a, int qubit_b,
                          const std::array<Amp, 4>& basis4,
                          std::vector<Amp>* rest) const;

  // Tensor product; `a` occupies qubits 0..a.n-1 (the high index bits).
  static StateVector tensor(const StateVector& a, const StateVector& b);

 private:
  void validate() const;

  int n_qubits_;
  std::vector<Amp> amps_;
};

Amp inner_product(const StateVector& a, const StateVector& b);  // <a|b>
double fidelity(const StateVector& a, const StateVector& b);    // |<a|b>|^2

// True when fidelity(a, b) >= 1 - tol (states differ by a global phase).
bool equal_up_to_phase(const StateVector& a, const StateVector& b, double tol);

// True when a == phase * b elementwise within tol.
bool equal_with_phase(const StateVector& a, const StateVector& b, Amp phase,
                      double tol);

// The phase p with a ~= p * b. Meaningful only when the states match up to
// a global phase; |p| is then 1 up to numerical error.
Amp relative_phase(const StateVector& a, const StateVector& b);

}  // namespace qss::qcore

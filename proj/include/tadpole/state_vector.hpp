#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "tadpole/pauli.hpp"

namespace tadpole {

inline constexpr int kMaxStateQubits = 30;

/// Amplitudes over the 2^n computational basis, qubit k = bit k of the index.
///
/// The container itself does not force unit norm: apply() returns op|psi>
/// unnormalized. Constructors that produce physical states (basis(),
/// normalized()) and the propagators keep the norm at 1 within 1e-12.
class StateVector {
 public:
  explicit StateVector(int n_qubits);
  StateVector(int n_qubits, std::vector<cplx> amplitudes);

  static StateVector basis(int n_qubits, std::uint64_t index);

  int n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return amps_.size(); }

  std::span<const cplx> amplitudes() const { return amps_; }
  std::span<cplx> amplitudes() { return amps_; }
  const cplx& operator[](std::uint64_t i) const { return amps_[i]; }
  cplx& operator[](std::uint64_t i) { return amps_[i]; }

  double norm() const;
  /// Returns a unit-norm copy; throws ConsistencyError on a zero vector.
  StateVector normalized() const;

  /// Multiplies by a global phase so that the largest-magnitude amplitude
  /// (lowest index on ties) is real and positive.
  void fix_global_phase();

 private:
  int n_qubits_;
  std::vector<cplx> amps_;
};

cplx inner(const StateVector& a, const StateVector& b);

/// op|psi>, term by term through bit flips and sign arithmetic.
StateVector apply(const PauliSum& op, const StateVector& psi);

/// <psi|op|psi>.
cplx expectation(const PauliSum& op, const StateVector& psi);

/// <psi|op|psi> for an operator the caller asserts to be Hermitian. Throws
/// ConsistencyError if the imaginary part exceeds 1e-12 (relative to the
/// coefficient norm of op when that exceeds one).
double expectation_real(const PauliSum& op, const StateVector& psi);

/// <psi|X^x Z^z|psi> for a single bare string.
cplx string_expectation(const PauliString& s, std::span<const cplx> psi);

}  // namespace tadpole

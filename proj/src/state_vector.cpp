#include "tadpole/state_vector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "parallel.hpp"
#include "tadpole/errors.hpp"

namespace tadpole {

namespace {

void check_state_qubits(int n) {
  if (n < 1 || n > kMaxStateQubits) {
    throw DimensionError("state vector qubit count " + std::to_string(n) + " outside [1, " +
                         std::to_string(kMaxStateQubits) + "]");
  }
}

void check_match(const PauliSum& op, const StateVector& psi) {
  if (op.n_qubits() != psi.n_qubits()) {
    throw DimensionError("operator on " + std::to_string(op.n_qubits()) + " qubits, state on " +
                         std::to_string(psi.n_qubits()));
  }
}

}  // namespace

StateVector::StateVector(int n_qubits) : n_qubits_(n_qubits) {
  check_state_qubits(n_qubits);
  amps_.assign(std::size_t{1} << n_qubits, cplx{});
}

StateVector::StateVector(int n_qubits, std::vector<cplx> amplitudes)
    : n_qubits_(n_qubits), amps_(std::move(amplitudes)) {
  check_state_qubits(n_qubits);
  if (amps_.size() != (std::size_t{1} << n_qubits)) {
    throw DimensionError("amplitude count does not equal 2^" + std::to_string(n_qubits));
  }
}

StateVector StateVector::basis(int n_qubits, std::uint64_t index) {
  StateVector s(n_qubits);
  if (index >= s.dim()) throw IndexError("basis index outside register");
  s.amps_[index] = 1.0;
  return s;
}

double StateVector::norm() const {
  const double sq = detail::chunked_sum<double>(amps_.size(), [&](std::size_t b, std::size_t e) {
    double s = 0.0;
    for (std::size_t i = b; i < e; ++i) s += std::norm(amps_[i]);
    return s;
  });
  return std::sqrt(sq);
}

StateVector StateVector::normalized() const {
  const double nrm = norm();
  if (!(nrm > 0.0)) throw ConsistencyError("cannot normalize a zero-norm state");
  StateVector out = *this;
  const double inv = 1.0 / nrm;
  for (auto& a : out.amps_) a *= inv;
  return out;
}

void StateVector::fix_global_phase() {
  std::size_t best = 0;
  double best_mag = -1.0;
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    // Relative slack so that numerically equal magnitudes resolve to the lowest index.
    const double mag = std::abs(amps_[i]);
    if (mag > best_mag * (1.0 + 1e-12)) {
      best_mag = mag;
      best = i;
    }
  }
  if (best_mag <= 0.0) return;
  const cplx phase = std::conj(amps_[best]) / best_mag;
  for (auto& a : amps_) a *= phase;
  amps_[best] = best_mag;
}

cplx inner(const StateVector& a, const StateVector& b) {
  if (a.n_qubits() != b.n_qubits()) throw DimensionError("inner: mismatched qubit counts");
  return detail::chunked_sum<cplx>(a.dim(), [&](std::size_t lo, std::size_t hi) {
    cplx s{};
    for (std::size_t i = lo; i < hi; ++i) s += std::conj(a[i]) * b[i];
    return s;
  });
}

StateVector apply(const PauliSum& op, const StateVector& psi) {
  check_match(op, psi);
  StateVector out(psi.n_qubits());
  auto in = psi.amplitudes();
  auto dst = out.amplitudes();
  const auto terms = op.terms();
  detail::chunked_for(psi.dim(), [&](std::size_t lo, std::size_t hi) {
    for (const auto& t : terms) {
      const QubitMask x = t.string.x;
      const QubitMask z = t.string.z;
      for (std::size_t b = lo; b < hi; ++b) {
        const std::uint64_t src = b ^ x;
        const double sign = (std::popcount(z & src) & 1) ? -1.0 : 1.0;
        dst[b] += sign * t.coeff * in[src];
      }
    }
  });
  return out;
}

cplx string_expectation(const PauliString& s, std::span<const cplx> psi) {
  return detail::chunked_sum<cplx>(psi.size(), [&](std::size_t lo, std::size_t hi) {
    cplx acc{};
    for (std::size_t b = lo; b < hi; ++b) {
      const double sign = (std::popcount(s.z & b) & 1) ? -1.0 : 1.0;
      acc += sign * std::conj(psi[b ^ s.x]) * psi[b];
    }
    return acc;
  });
}

cplx expectation(const PauliSum& op, const StateVector& psi) {
  check_match(op, psi);
  cplx total{};
  for (const auto& t : op.terms()) total += t.coeff * string_expectation(t.string, psi.amplitudes());
  return total;
}

double expectation_real(const PauliSum& op, const StateVector& psi) {
  const cplx v = expectation(op, psi);
  const double scale = std::max(1.0, coefficient_l1_norm(op));
  if (std::abs(v.imag()) > 1e-12 * scale) {
    throw ConsistencyError("expectation of a Hermitian operator has imaginary part " +
                           std::to_string(v.imag()));
  }
  return v.real();
}

}  // namespace tadpole

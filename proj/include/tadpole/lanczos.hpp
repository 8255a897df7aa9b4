#pragma once

#include <cstdint>
#include <optional>

#include "tadpole/compiled_operator.hpp"
#include "tadpole/pauli.hpp"
#include "tadpole/state_vector.hpp"

namespace tadpole {

struct EigenOptions {
  /// Converged when ||H psi - E psi|| <= tol * spectral scale.
  double tol = 1e-12;
  /// Basis vectors held in memory per restart cycle.
  int max_basis = 30;
  /// Lowest Ritz vectors carried over a restart.
  int keep = 3;
  int max_restarts = 400;
  /// At or below this width the dense solver is used.
  int dense_max_qubits = 8;
  std::uint64_t seed = 0x5eedULL;
};

struct EigenResult {
  double energy = 0.0;
  StateVector state{1};
  double residual = 0.0;          // ||H psi - E psi||
  double gap_estimate = 0.0;      // E1 - E0 (Ritz estimate on the iterative path); NaN if unknown
  bool near_degenerate = false;   // gap_estimate < 1e-8
  int matvecs = 0;
};

/// Ground state of a Hermitian PauliSum; dense path up to dense_max_qubits,
/// Lanczos beyond.
EigenResult lowest_eigenpair(const PauliSum& H, const EigenOptions& opts = {});

/// Dense diagonalization (refuses more than kMaxDenseQubits qubits).
EigenResult dense_lowest_eigenpair(const PauliSum& H);

/// Thick-restart Lanczos with full reorthogonalization against the stored
/// basis. `start` seeds the Krylov space (a previous ground state is a good
/// choice); a seeded random vector is used otherwise.
EigenResult lanczos_lowest_eigenpair(const LinearOperator& H, int n_qubits, const EigenOptions& opts = {},
                                     const StateVector* start = nullptr);

}  // namespace tadpole

#pragma once

#include "tadpole/compiled_operator.hpp"
#include "tadpole/pauli.hpp"
#include "tadpole/state_vector.hpp"

namespace tadpole {

struct PropagatorOptions {
  /// Krylov a-posteriori error bound per step.
  double tol = 1e-12;
  /// Largest Krylov subspace before the step is halved.
  int krylov_dim = 30;
  int max_halvings = 10;
  /// At or below this width exp(-iH dt) is formed densely.
  int dense_max_qubits = 6;
};

struct PropagationStats {
  int substeps = 0;
  int max_krylov_dim = 0;
  int matvecs = 0;
  double error_estimate = 0.0;
};

/// exp(-i H dt)|psi> for a Hermitian PauliSum: dense below the width
/// threshold, Krylov otherwise. The result is renormalized when the norm
/// drifted by less than 1e-10; a larger drift throws NumericalError.
StateVector step_propagate(const StateVector& psi, const PauliSum& H, double dt,
                           const PropagatorOptions& opts = {}, PropagationStats* stats = nullptr);

/// Dense reference: eigendecomposition of H, then V exp(-i Lambda dt) V^dagger.
StateVector dense_propagate(const StateVector& psi, const PauliSum& H, double dt);

/// Lanczos expm-times-vector with an adaptive subspace; a step whose error
/// bound is not met within krylov_dim is split in halves (recursively, up to
/// max_halvings levels) before giving up with ConvergenceError.
StateVector krylov_propagate(const StateVector& psi, const LinearOperator& H, double dt,
                             const PropagatorOptions& opts = {}, PropagationStats* stats = nullptr);

}  // namespace tadpole

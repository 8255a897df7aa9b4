#pragma once

#include <functional>
#include <vector>

#include "tadpole/lanczos.hpp"
#include "tadpole/model.hpp"

namespace tadpole {

struct VacuumOptions {
  /// Stop once max_p |u_measured - u_used| <= tol.
  double tol = 1e-10;
  int max_iter = 200;
  /// Mixing: u_next = theta * u_measured + (1 - theta) * u_used. 1 = plain iteration.
  double damping = 1.0;
  EigenOptions eigen{};
  /// Called after every outer iteration with (iteration, residual).
  std::function<void(int, double)> progress;
};

struct VacuumResult {
  StateVector state{1};
  /// Field measured in `state`; the Hamiltonian that produced `state` used a
  /// field within `final_residual` of it.
  TadpoleField tadpole{ModelKind::chain, {}};
  double total_energy = 0.0;     // <H_E + H_B> in lattice units
  double energy_density = 0.0;   // total_energy / plaquette count
  int iterations = 0;
  double final_residual = 0.0;
  double gap_estimate = 0.0;
  bool near_degenerate = false;
  std::vector<double> residual_history;
};

/// Ground state of H({u}) where {u} is measured in that same ground state.
/// Starts from u = 1, warm-starts each eigensolve from the previous state.
/// Throws ConvergenceError when max_iter is exhausted or the residual fails
/// to decrease for 5 consecutive iterations (suggesting damping).
VacuumResult self_consistent_vacuum(const Model& model, const VacuumOptions& opts = {});

/// Ground state of the Hamiltonian built from a fixed field.
EigenResult ground_state_for_field(const TadpoleHamiltonian& H, const EigenOptions& opts,
                                   const StateVector* start = nullptr);

}  // namespace tadpole

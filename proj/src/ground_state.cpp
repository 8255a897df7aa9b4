#include "tadpole/ground_state.hpp"

#include <optional>

#include <fmt/format.h>

#include "tadpole/errors.hpp"

namespace tadpole {

EigenResult ground_state_for_field(const TadpoleHamiltonian& H, const EigenOptions& opts,
                                   const StateVector* start) {
  if (H.model().n_qubits() <= opts.dense_max_qubits) return dense_lowest_eigenpair(H.as_pauli_sum());
  return lanczos_lowest_eigenpair(H.linear_operator(), H.model().n_qubits(), opts, start);
}

VacuumResult self_consistent_vacuum(const Model& model, const VacuumOptions& opts) {
  if (!(opts.tol > 0.0)) throw ValidationError("vacuum tolerance must be positive");
  if (opts.max_iter < 1) throw ValidationError("vacuum max_iter must be at least 1");
  if (!(opts.damping > 0.0 && opts.damping <= 1.0)) throw ValidationError("damping must lie in (0, 1]");

  TadpoleHamiltonian H(model);
  std::vector<double> history;
  int non_decreasing = 0;
  std::optional<StateVector> previous;

  for (int it = 1; it <= opts.max_iter; ++it) {
    const EigenResult eig = ground_state_for_field(H, opts.eigen, previous ? &*previous : nullptr);
    const TadpoleField measured = H.measure(eig.state);
    const double residual = max_abs_difference(measured, H.field());
    if (!history.empty() && residual >= history.back()) {
      ++non_decreasing;
    } else {
      non_decreasing = 0;
    }
    history.push_back(residual);
    if (opts.progress) opts.progress(it, residual);

    if (residual <= opts.tol) {
      VacuumResult r;
      r.state = eig.state;
      r.tadpole = measured;
      r.total_energy = eig.energy;
      r.energy_density = eig.energy / model.plaquette_count();
      r.iterations = it;
      r.final_residual = residual;
      r.gap_estimate = eig.gap_estimate;
      r.near_degenerate = eig.near_degenerate;
      r.residual_history = std::move(history);
      return r;
    }
    if (non_decreasing >= 5) {
      const std::string msg = fmt::format(
          "self-consistent vacuum oscillates (residual {:.3e} not decreasing for 5 iterations); "
          "retry with damping < 1",
          residual);
      throw ConvergenceError(msg, std::move(history));
    }
    H.set_field(mix(H.field(), measured, opts.damping));
    previous = eig.state;
  }
  const std::string msg = fmt::format("self-consistent vacuum not converged in {} iterations (residual {:.3e})",
                                      opts.max_iter, history.back());
  throw ConvergenceError(msg, std::move(history));
}

}  // namespace tadpole

#include "tadpole/evolution.hpp"

#include <cmath>

#include <fmt/format.h>

#include "tadpole/errors.hpp"
#include "tadpole/observables.hpp"

namespace tadpole {

std::string to_string(EvolutionMode m) {
  switch (m) {
    case EvolutionMode::dynamical: return "dynamical";
    case EvolutionMode::unimproved: return "unimproved";
    case EvolutionMode::vacuum: return "vacuum";
  }
  return "?";
}

std::string to_string(InitialKind k) { return k == InitialKind::psi1 ? "psi1" : "psi2"; }

EvolutionMode parse_mode(const std::string& s) {
  if (s == "dynamical") return EvolutionMode::dynamical;
  if (s == "unimproved") return EvolutionMode::unimproved;
  if (s == "vacuum") return EvolutionMode::vacuum;
  throw ValidationError("unknown evolution mode '" + s + "'");
}

InitialKind parse_initial(const std::string& s) {
  if (s == "psi1") return InitialKind::psi1;
  if (s == "psi2") return InitialKind::psi2;
  throw ValidationError("unknown initial state '" + s + "'");
}

void EvolutionConfig::validate() const {
  if (!(dt > 0.0)) throw ValidationError("dt must be positive");
  if (!(t_max >= dt)) throw ValidationError("t_max must be at least dt");
  if (!(sc_tol > 0.0)) throw ValidationError("sc_tol must be positive");
  if (sc_max_iter < 1) throw ValidationError("sc_max_iter must be at least 1");
  if (!(damping > 0.0 && damping <= 1.0)) throw ValidationError("damping must lie in (0, 1]");
  if (record_every < 1) throw ValidationError("record_every must be at least 1");
  if (!(propagator.tol > 0.0) || propagator.krylov_dim < 2) {
    throw ValidationError("propagator needs tol > 0 and krylov_dim >= 2");
  }
}

int EvolutionConfig::step_count() const {
  return static_cast<int>(std::floor(t_max / dt + 1e-9));
}

StateVector prepare_initial_state(InitialKind kind, const Model& model, const VacuumResult* vacuum) {
  if (kind == InitialKind::psi1) return StateVector::basis(model.n_qubits(), 1);
  if (!vacuum) throw ValidationError("psi2 needs the interacting vacuum");
  if (vacuum->state.n_qubits() != model.n_qubits()) throw DimensionError("vacuum does not match the model");
  const CompiledOperator plaq(model.plaquette_op(0));
  const StateVector image = plaq.apply(vacuum->state);
  if (image.norm() < 1e-12) throw ConsistencyError("plaquette operator annihilates the vacuum");
  return image.normalized();
}

namespace {

StateVector propagate(const StateVector& psi, const TadpoleHamiltonian& H, double dt,
                      const PropagatorOptions& opts) {
  if (H.model().n_qubits() <= opts.dense_max_qubits) {
    return step_propagate(psi, H.as_pauli_sum(), dt, opts);
  }
  return krylov_propagate(psi, H.linear_operator(), dt, opts);
}

}  // namespace

TimeSeries evolve(const StateVector& psi0, const Model& model, const VacuumResult* vacuum,
                  const EvolutionConfig& cfg, const std::function<void(const TimeRecord&)>& on_record) {
  cfg.validate();
  if (psi0.n_qubits() != model.n_qubits()) throw DimensionError("initial state does not match the model");
  if (std::abs(psi0.norm() - 1.0) > 1e-10) throw ValidationError("initial state is not normalized");
  if (cfg.mode == EvolutionMode::vacuum && !vacuum) throw ValidationError("vacuum mode needs a vacuum result");

  const ProfileEvaluator profiles(model);
  TadpoleHamiltonian H(model);
  const bool dynamical = cfg.mode == EvolutionMode::dynamical;

  auto measure = [&](const StateVector& s) {
    return cfg.pin_unit_field ? model.unit_field() : H.measure(s);
  };

  switch (cfg.mode) {
    case EvolutionMode::unimproved: H.set_field(model.unit_field()); break;
    case EvolutionMode::vacuum: H.set_field(vacuum->tadpole); break;
    case EvolutionMode::dynamical: H.set_field(measure(psi0)); break;
  }

  TimeSeries series;
  StateVector psi = psi0;
  auto emit = [&](TimeRecord rec) {
    rec.t = rec.step * cfg.dt;
    rec.energies = profiles.electric(psi, rec.t).energies;
    rec.tadpole = H.field();
    rec.energy_total = H.energy(psi);
    rec.norm = psi.norm();
    if (on_record) on_record(rec);
    series.records.push_back(std::move(rec));
  };

  emit(TimeRecord{});
  const int steps = cfg.step_count();
  for (int step = 1; step <= steps; ++step) {
    TimeRecord rec;
    rec.step = step;
    if (!dynamical) {
      psi = propagate(psi, H, cfg.dt, cfg.propagator);
    } else {
      const TadpoleField start = H.field();
      TadpoleField guess = start;
      bool converged = false;
      for (int k = 1; k <= cfg.sc_max_iter; ++k) {
        H.set_field(guess);
        StateVector trial = propagate(psi, H, cfg.dt, cfg.propagator);
        const TadpoleField measured = measure(trial);
        const double r = max_abs_difference(measured, guess);
        rec.residual_trace.push_back(r);
        if (r <= cfg.sc_tol) {
          psi = std::move(trial);
          H.set_field(measured);
          rec.iterations = k;
          rec.residual = r;
          converged = true;
          break;
        }
        guess = mix(guess, measured, cfg.damping);
      }
      if (!converged) {
        throw ConvergenceError(fmt::format("tadpole self-consistency failed at t={} after {} passes",
                                           step * cfg.dt, cfg.sc_max_iter),
                               rec.residual_trace);
      }
      ++series.iteration_histogram[rec.iterations];
    }
    if (step % cfg.record_every == 0) emit(std::move(rec));
  }
  series.final_state = std::move(psi);
  return series;
}

}  // namespace tadpole

#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tadpole/ground_state.hpp"
#include "tadpole/model.hpp"
#include "tadpole/propagator.hpp"

namespace tadpole {

enum class EvolutionMode { dynamical, unimproved, vacuum };
enum class InitialKind { psi1, psi2 };

std::string to_string(EvolutionMode m);
std::string to_string(InitialKind k);
EvolutionMode parse_mode(const std::string& s);
InitialKind parse_initial(const std::string& s);

struct EvolutionConfig {
  double dt = 0.025;
  double t_max = 10.0;
  EvolutionMode mode = EvolutionMode::dynamical;
  double sc_tol = 1e-10;
  int sc_max_iter = 100;
  /// Mixing of successive tadpole estimates within a step, in (0, 1].
  double damping = 1.0;
  int record_every = 1;
  PropagatorOptions propagator{};
  /// Replace every tadpole measurement by u = 1. Only meaningful in
  /// dynamical mode, where it must reproduce the unimproved trajectory.
  bool pin_unit_field = false;

  void validate() const;
  int step_count() const;
  int record_count() const { return step_count() / record_every + 1; }
};

struct TimeRecord {
  int step = 0;
  double t = 0.0;
  std::vector<double> energies;      // per-plaquette electric energy
  TadpoleField tadpole{ModelKind::chain, {}};  // field in the Hamiltonian at t
  int iterations = 0;                // self-consistency passes for this step
  std::optional<double> residual;    // final |u' - u|, empty when no iteration ran
  std::vector<double> residual_trace;
  double energy_total = 0.0;         // <H({u(t)})>
  double norm = 1.0;
};

struct TimeSeries {
  std::vector<TimeRecord> records;
  /// Self-consistency passes per step -> number of steps (dynamical mode).
  std::map<int, int> iteration_histogram;
  StateVector final_state{1};
};

/// psi1: plaquette 0 / cell (0,0) excited on the trivial vacuum.
/// psi2: the normalized image of the vacuum under plaquette 0 / cell (0,0).
StateVector prepare_initial_state(InitialKind kind, const Model& model, const VacuumResult* vacuum);

/// Fixed-step evolution. In dynamical mode each step iterates
///   psi' = exp(-i H({u}) dt) psi(t),  u' = measure(psi')
/// from u = u(t), always re-propagating from psi(t), until max|u' - u| <= sc_tol,
/// then accepts psi(t+dt) = psi' and u(t+dt) = u'. `on_record` sees each
/// record as soon as it is produced.
TimeSeries evolve(const StateVector& psi0, const Model& model, const VacuumResult* vacuum,
                  const EvolutionConfig& cfg,
                  const std::function<void(const TimeRecord&)>& on_record = {});

}  // namespace tadpole

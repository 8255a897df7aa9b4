#pragma once

#include <span>
#include <vector>

#include "tadpole/compiled_operator.hpp"
#include "tadpole/model.hpp"
#include "tadpole/state_vector.hpp"

namespace tadpole {

/// Electric energy of each plaquette/cell at one instant, ordered by qubit index.
struct EnergyProfile {
  double t = 0.0;
  std::vector<double> energies;
};

/// Holds the compiled per-plaquette electric-energy operators so profiles can
/// be taken every time step without rebuilding them.
class ProfileEvaluator {
 public:
  explicit ProfileEvaluator(const Model& model);
  EnergyProfile electric(const StateVector& psi, double t = 0.0) const;

 private:
  std::vector<CompiledOperator> energy_ops_;
};

EnergyProfile electric_energy_profile(const StateVector& psi, const Model& model);

/// u^4 (chain) or u^6 (honeycomb) per plaquette.
TadpoleField tadpole_profile(const StateVector& psi, const Model& model);

/// Von Neumann entropy in bits of the reduced state on `cut`, from the
/// singular values of the amplitude matrix split along the cut.
double bipartite_entropy(const StateVector& psi, std::span<const int> cut);

inline constexpr int kMaxStabilizerRenyiQubits = 12;

struct StabilizerRenyi {
  double m1 = 0.0;  // -sum Xi log2 Xi - n
  double m2 = 0.0;  // -log2 sum Xi^2 - n
  double m1_density = 0.0;
  double m2_density = 0.0;
  double xi_sum = 0.0;
};

/// Stabilizer Renyi entropies (base 2) from Xi_P = <psi|P|psi>^2 / 2^n over all
/// 4^n Pauli strings; zero on stabilizer states. Refuses n > 12.
StabilizerRenyi stabilizer_renyi(const StateVector& psi);

/// M_alpha for alpha in {1, 2}.
double stabilizer_renyi(const StateVector& psi, int alpha);

}  // namespace tadpole

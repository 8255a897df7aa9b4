#pragma once

// SU(2) plaquette chain at j_max = 1/2 with periodic boundaries. After the
// truncation each plaquette is a two-level system labelled by its upper rail
// link, so qubit i is plaquette i and the rung links are fixed by the
// neighbouring qubits. N_c = 2 and a = 1 are not configurable.

#include "tadpole/pauli.hpp"
#include "tadpole/state_vector.hpp"
#include "tadpole/tadpole_field.hpp"

namespace tadpole {

struct ChainSpec {
  int L = 10;
  double g = 0.5;

  /// Throws ValidationError unless L >= 3 and g > 0.
  void validate() const;
  int n_qubits() const { return L; }
};

/// Controlled plaquette operator on plaquette i:
///   L0 X L0 + 1/2 L1 X L0 + 1/2 L0 X L1 + 1/4 L1 X L1
/// with the projectors on qubits i-1 and i+1 (mod L). Hermitian.
PauliSum plaquette_op(const ChainSpec& spec, int i);

/// 1/(2 g^2) sum_i [4 - (P_i + P_i^dagger) / u^4_i].
PauliSum magnetic_hamiltonian(const ChainSpec& spec, const TadpoleField& u);

/// 3 g^2/8 sum_i [2 L1_i + L1_i L0_{i+1} + L0_i L1_{i+1}].
PauliSum electric_hamiltonian(const ChainSpec& spec);

PauliSum full_hamiltonian(const ChainSpec& spec, const TadpoleField& u);

/// Electric energy attributed to plaquette i: its own link plus the rung
/// terms on both sides. Summing over i counts each rung term twice, so this
/// is a local observable, not a partition of electric_hamiltonian.
PauliSum plaquette_electric_energy_op(const ChainSpec& spec, int i);

/// u^4_i = 1 + 1/4 <P_i + P_i^dagger>.
double chain_tadpole_factor(const StateVector& psi, const ChainSpec& spec, int i);

/// Alternate sign convention L0 X L0 - 1/2 L1 X L0 - 1/2 L0 X L1 + 1/4 L1 X L1.
/// Only defined for even L.
PauliSum alt_plaquette_op(const ChainSpec& spec, int i);

PauliSum alt_full_hamiltonian(const ChainSpec& spec, const TadpoleField& u);

/// Commuting factors exp(-i pi/4 (-1)^k Z_k Z_{k+1}), k = 0..L-1 (mod L),
/// each as cos(pi/4) - i (-1)^k sin(pi/4) Z_k Z_{k+1}. Even L only.
std::vector<PauliSum> basis_change_factors(const ChainSpec& spec);

/// Product of basis_change_factors, mapping the alternate convention onto the
/// standard one: U H_alt U^dagger = H.
PauliSum basis_change_unitary(const ChainSpec& spec);

}  // namespace tadpole

#pragma once

// 2+1D SU(2) honeycomb lattice at j_max = 1/2. Each hexagonal cell (i, j) is
// one qubit, index i + j * Lx. Cells outside the Lx x Ly active region are
// frozen spins in |0>: their Z factors are +1, Lambda_0 = 1 and Lambda_1 = 0.
//
// Axial layout: the six neighbours of (i, j) are the offsets
//   (+1,-1) (+1,0) (0,+1) (-1,+1) (-1,0) (0,-1)
// in cyclic order; with i along the x axis and j along the 60 degree axis,
// consecutive entries are adjacent hexagons, so ring pairs (K, K+1) share a
// vertex with the centre cell.

#include <array>
#include <optional>

#include "tadpole/pauli.hpp"
#include "tadpole/state_vector.hpp"
#include "tadpole/tadpole_field.hpp"

namespace tadpole {

struct HoneycombSpec {
  int Lx = 7;
  int Ly = 3;
  double g = 0.5;

  void validate() const;
  int n_qubits() const { return Lx * Ly; }
  bool contains(int i, int j) const { return i >= 0 && i < Lx && j >= 0 && j < Ly; }
  int qubit(int i, int j) const { return i + j * Lx; }
};

struct RingSite {
  int i = 0;
  int j = 0;
  std::optional<int> qubit;  // empty when frozen

  bool frozen() const { return !qubit.has_value(); }
};

using NeighborRing = std::array<RingSite, 6>;

NeighborRing neighbors(const HoneycombSpec& spec, int i, int j);

/// X_(i,j) prod_{K} [(1/2 - 1/(2 sqrt2)) Z_K Z_{K+1} + 1/2 + 1/(2 sqrt2)],
/// K running cyclically over the ring. Hermitian, norm <= 1.
PauliSum hex_plaquette_op(const HoneycombSpec& spec, int i, int j);

/// 2/(3 sqrt3 g^2) sum_cells [4 - (P + P^dagger) / u^6].
PauliSum hex_magnetic_hamiltonian(const HoneycombSpec& spec, const TadpoleField& u);

/// 3 sqrt3 g^2/4 sum_cells L1_c (3 - L1_(i+1,j-1) - L1_(i+1,j) - L1_(i,j+1)).
PauliSum hex_electric_hamiltonian(const HoneycombSpec& spec);

PauliSum hex_full_hamiltonian(const HoneycombSpec& spec, const TadpoleField& u);

/// 3 sqrt3 g^2/8 [L1_c sum_K L0_K + L0_c sum_K L1_K]: all six links of the cell.
PauliSum hex_electric_energy_op(const HoneycombSpec& spec, int i, int j);

/// u^6 = 1 + 1/4 <P + P^dagger>.
double hex_tadpole_factor(const StateVector& psi, const HoneycombSpec& spec, int i, int j);

}  // namespace tadpole

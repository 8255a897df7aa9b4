#pragma once

#include <string>
#include <variant>
#include <vector>

#include "tadpole/chain.hpp"
#include "tadpole/compiled_operator.hpp"
#include "tadpole/honeycomb.hpp"
#include "tadpole/tadpole_field.hpp"

namespace tadpole {

/// Either lattice, behind the operations the solvers need. Plaquettes are
/// addressed by their qubit index (i on the chain, i + j*Lx on the honeycomb).
class Model {
 public:
  explicit Model(ChainSpec spec);
  explicit Model(HoneycombSpec spec);

  ModelKind kind() const;
  const ChainSpec* chain() const { return std::get_if<ChainSpec>(&spec_); }
  const HoneycombSpec* honeycomb() const { return std::get_if<HoneycombSpec>(&spec_); }

  int n_qubits() const;
  int plaquette_count() const { return n_qubits(); }
  double coupling() const;
  std::string describe() const;

  TadpoleField unit_field() const { return TadpoleField::ones(kind(), plaquette_count()); }

  /// Magnetic prefactor: 1/(2g^2) on the chain, 2/(3 sqrt3 g^2) on the honeycomb.
  double magnetic_prefactor() const;

  PauliSum plaquette_op(int p) const;
  PauliSum electric_hamiltonian() const;
  PauliSum magnetic_hamiltonian(const TadpoleField& u) const;
  PauliSum hamiltonian(const TadpoleField& u) const;
  PauliSum electric_energy_op(int p) const;

  /// Plaquette p of the chain is i; of the honeycomb "(i,j)".
  std::string plaquette_label(int p) const;

 private:
  std::variant<ChainSpec, HoneycombSpec> spec_;
};

/// H({u}) = H_E + pref * sum_p [4 - 2 P_p / u_p], compiled once; changing the
/// field only rescales the plaquette parts.
class TadpoleHamiltonian {
 public:
  explicit TadpoleHamiltonian(const Model& model);
  TadpoleHamiltonian(const Model& model, const TadpoleField& u);

  const Model& model() const { return model_; }
  const TadpoleField& field() const { return field_; }
  void set_field(const TadpoleField& u);

  const WeightedOperator& op() const { return op_; }
  LinearOperator linear_operator() const { return op_.as_linear_operator(); }

  /// <psi|H|psi>.
  double energy(const StateVector& psi) const;

  /// Tadpole field measured in psi: 1 + 1/4 <P_p + P_p^dagger> per plaquette.
  /// Throws ConsistencyError outside [1/2, 3/2].
  TadpoleField measure(const StateVector& psi) const;

  /// Upper bound on ||H|| from the coefficient norms of the parts.
  double norm_bound() const;

  PauliSum as_pauli_sum() const { return model_.hamiltonian(field_); }

 private:
  Model model_;
  TadpoleField field_;
  WeightedOperator op_;
  std::vector<double> part_norms_;
};

}  // namespace tadpole

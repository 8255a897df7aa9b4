#include "tadpole/honeycomb.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "tadpole/errors.hpp"
#include "tadpole_check.hpp"

namespace tadpole {

void HoneycombSpec::validate() const {
  if (Lx < 1 || Ly < 1) throw ValidationError("honeycomb needs Lx, Ly >= 1");
  if (Lx * Ly > kMaxStateQubits) throw ValidationError("honeycomb exceeds the state-vector limit");
  if (!(g > 0.0) || !std::isfinite(g)) throw ValidationError("coupling g must be positive");
}

namespace {

constexpr std::array<std::array<int, 2>, 6> kRingOffsets{
    {{+1, -1}, {+1, 0}, {0, +1}, {-1, +1}, {-1, 0}, {0, -1}}};

void check_cell(const HoneycombSpec& spec, int i, int j) {
  spec.validate();
  if (!spec.contains(i, j)) {
    throw IndexError("cell (" + std::to_string(i) + "," + std::to_string(j) + ") outside " +
                     std::to_string(spec.Lx) + "x" + std::to_string(spec.Ly) + " grid");
  }
}

// Lambda_which on a cell that may be frozen (|0>): Lambda_0 -> 1, Lambda_1 -> 0.
PauliSum lambda_at(const HoneycombSpec& spec, int i, int j, int which) {
  const int n = spec.n_qubits();
  if (!spec.contains(i, j)) return PauliSum::identity(n, which == 0 ? 1.0 : 0.0);
  return projector(spec.qubit(i, j), which, n);
}

PauliSum z_at(const RingSite& site, int n) {
  if (site.frozen()) return PauliSum::identity(n);
  return PauliSum::single(n, PauliString::z_on(*site.qubit));
}

}  // namespace

NeighborRing neighbors(const HoneycombSpec& spec, int i, int j) {
  check_cell(spec, i, j);
  NeighborRing ring;
  for (std::size_t k = 0; k < kRingOffsets.size(); ++k) {
    RingSite& s = ring[k];
    s.i = i + kRingOffsets[k][0];
    s.j = j + kRingOffsets[k][1];
    if (spec.contains(s.i, s.j)) s.qubit = spec.qubit(s.i, s.j);
  }
  return ring;
}

PauliSum hex_plaquette_op(const HoneycombSpec& spec, int i, int j) {
  const NeighborRing ring = neighbors(spec, i, j);
  const int n = spec.n_qubits();
  const double half_inv_sqrt2 = 1.0 / (2.0 * std::numbers::sqrt2);
  const double zz_coeff = 0.5 - half_inv_sqrt2;
  const double const_coeff = 0.5 + half_inv_sqrt2;
  PauliSum op = PauliSum::single(n, PauliString::x_on(spec.qubit(i, j)));
  for (std::size_t k = 0; k < ring.size(); ++k) {
    const PauliSum zz = multiply(z_at(ring[k], n), z_at(ring[(k + 1) % ring.size()], n));
    op = multiply(op, zz_coeff * zz + PauliSum::identity(n, const_coeff));
  }
  return op;
}

PauliSum hex_magnetic_hamiltonian(const HoneycombSpec& spec, const TadpoleField& u) {
  spec.validate();
  const int n = spec.n_qubits();
  if (u.kind() != ModelKind::honeycomb) throw ValidationError("honeycomb Hamiltonian needs a u^6 field");
  if (u.size() != static_cast<std::size_t>(n)) {
    throw DimensionError("tadpole field has " + std::to_string(u.size()) + " entries, grid has " +
                         std::to_string(n));
  }
  const double pref = 2.0 / (3.0 * std::numbers::sqrt3 * spec.g * spec.g);
  PauliSum h = PauliSum::identity(n, pref * 4.0 * n);
  for (int j = 0; j < spec.Ly; ++j) {
    for (int i = 0; i < spec.Lx; ++i) {
      h -= (pref * 2.0 / u[spec.qubit(i, j)]) * hex_plaquette_op(spec, i, j);
    }
  }
  return h;
}

PauliSum hex_electric_hamiltonian(const HoneycombSpec& spec) {
  spec.validate();
  const int n = spec.n_qubits();
  PauliSum h(n);
  for (int j = 0; j < spec.Ly; ++j) {
    for (int i = 0; i < spec.Lx; ++i) {
      PauliSum bracket = PauliSum::identity(n, 3.0);
      bracket -= lambda_at(spec, i + 1, j - 1, 1);
      bracket -= lambda_at(spec, i + 1, j, 1);
      bracket -= lambda_at(spec, i, j + 1, 1);
      h += multiply(lambda_at(spec, i, j, 1), bracket);
    }
  }
  return h * (3.0 * std::numbers::sqrt3 * spec.g * spec.g / 4.0);
}

PauliSum hex_full_hamiltonian(const HoneycombSpec& spec, const TadpoleField& u) {
  return hex_electric_hamiltonian(spec) + hex_magnetic_hamiltonian(spec, u);
}

PauliSum hex_electric_energy_op(const HoneycombSpec& spec, int i, int j) {
  const NeighborRing ring = neighbors(spec, i, j);
  const int n = spec.n_qubits();
  PauliSum sum0(n);
  PauliSum sum1(n);
  for (const auto& s : ring) {
    sum0 += lambda_at(spec, s.i, s.j, 0);
    sum1 += lambda_at(spec, s.i, s.j, 1);
  }
  PauliSum h = multiply(lambda_at(spec, i, j, 1), sum0) + multiply(lambda_at(spec, i, j, 0), sum1);
  return h * (3.0 * std::numbers::sqrt3 * spec.g * spec.g / 8.0);
}

double hex_tadpole_factor(const StateVector& psi, const HoneycombSpec& spec, int i, int j) {
  const PauliSum p = hex_plaquette_op(spec, i, j);
  const double plaq_sum = 2.0 * expectation_real(p, psi);
  return detail::checked_tadpole_power(1.0 + 0.25 * plaq_sum, spec.qubit(i, j));
}

}  // namespace tadpole

#include "tadpole/chain.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "tadpole/errors.hpp"
#include "tadpole_check.hpp"

namespace tadpole {

void ChainSpec::validate() const {
  if (L < 3) throw ValidationError("chain needs L >= 3 plaquettes, got " + std::to_string(L));
  if (L > kMaxStateQubits) throw ValidationError("chain L exceeds the state-vector limit");
  if (!(g > 0.0) || !std::isfinite(g)) throw ValidationError("coupling g must be positive");
}

namespace {

int wrap(int i, int L) { return ((i % L) + L) % L; }

void check_plaquette(const ChainSpec& spec, int i) {
  spec.validate();
  if (i < 0 || i >= spec.L) {
    throw IndexError("plaquette " + std::to_string(i) + " outside chain of length " +
                     std::to_string(spec.L));
  }
}

PauliSum controlled_x(const ChainSpec& spec, int i, double cross_sign) {
  check_plaquette(spec, i);
  const int n = spec.L;
  const int left = wrap(i - 1, n);
  const int right = wrap(i + 1, n);
  const PauliSum x = PauliSum::single(n, PauliString::x_on(i));
  auto term = [&](int wl, int wr) {
    return multiply(multiply(projector(left, wl, n), x), projector(right, wr, n));
  };
  return term(0, 0) + cross_sign * 0.5 * term(1, 0) + cross_sign * 0.5 * term(0, 1) +
         0.25 * term(1, 1);
}

void check_field(const ChainSpec& spec, const TadpoleField& u) {
  if (u.kind() != ModelKind::chain) throw ValidationError("chain Hamiltonian needs a u^4 field");
  if (u.size() != static_cast<std::size_t>(spec.L)) {
    throw DimensionError("tadpole field has " + std::to_string(u.size()) + " entries, chain has " +
                         std::to_string(spec.L));
  }
}

PauliSum magnetic_from(const ChainSpec& spec, const TadpoleField& u, bool alternate) {
  spec.validate();
  check_field(spec, u);
  const int n = spec.L;
  const double pref = 1.0 / (2.0 * spec.g * spec.g);
  PauliSum h = PauliSum::identity(n, pref * 4.0 * n);
  for (int i = 0; i < n; ++i) {
    const PauliSum p = alternate ? alt_plaquette_op(spec, i) : plaquette_op(spec, i);
    // P is Hermitian, so P + P^dagger = 2P.
    h -= (pref * 2.0 / u[i]) * p;
  }
  return h;
}

}  // namespace

PauliSum plaquette_op(const ChainSpec& spec, int i) { return controlled_x(spec, i, +1.0); }

PauliSum alt_plaquette_op(const ChainSpec& spec, int i) {
  if (spec.L % 2 != 0) throw ValidationError("alternate plaquette convention requires even L");
  return controlled_x(spec, i, -1.0);
}

PauliSum magnetic_hamiltonian(const ChainSpec& spec, const TadpoleField& u) {
  return magnetic_from(spec, u, false);
}

PauliSum electric_hamiltonian(const ChainSpec& spec) {
  spec.validate();
  const int n = spec.L;
  PauliSum h(n);
  for (int i = 0; i < n; ++i) {
    const int r = wrap(i + 1, n);
    h += 2.0 * projector(i, 1, n);
    h += multiply(projector(i, 1, n), projector(r, 0, n));
    h += multiply(projector(i, 0, n), projector(r, 1, n));
  }
  return h * (3.0 * spec.g * spec.g / 8.0);
}

PauliSum full_hamiltonian(const ChainSpec& spec, const TadpoleField& u) {
  return electric_hamiltonian(spec) + magnetic_hamiltonian(spec, u);
}

PauliSum alt_full_hamiltonian(const ChainSpec& spec, const TadpoleField& u) {
  return electric_hamiltonian(spec) + magnetic_from(spec, u, true);
}

PauliSum plaquette_electric_energy_op(const ChainSpec& spec, int i) {
  check_plaquette(spec, i);
  const int n = spec.L;
  const int l = wrap(i - 1, n);
  const int r = wrap(i + 1, n);
  PauliSum h = 2.0 * projector(i, 1, n);
  h += multiply(projector(i, 1, n), projector(r, 0, n));
  h += multiply(projector(i, 0, n), projector(r, 1, n));
  h += multiply(projector(l, 1, n), projector(i, 0, n));
  h += multiply(projector(l, 0, n), projector(i, 1, n));
  return h * (3.0 * spec.g * spec.g / 8.0);
}

double chain_tadpole_factor(const StateVector& psi, const ChainSpec& spec, int i) {
  const PauliSum p = plaquette_op(spec, i);
  const double plaq_sum = 2.0 * expectation_real(p, psi);
  return detail::checked_tadpole_power(1.0 + 0.25 * plaq_sum, i);
}

std::vector<PauliSum> basis_change_factors(const ChainSpec& spec) {
  spec.validate();
  if (spec.L % 2 != 0) throw ValidationError("basis change unitary requires even L");
  const int n = spec.L;
  const double c = std::cos(std::numbers::pi / 4.0);
  const double s = std::sin(std::numbers::pi / 4.0);
  std::vector<PauliSum> factors;
  for (int k = 0; k < n; ++k) {
    const double parity = (k % 2 == 0) ? 1.0 : -1.0;
    const PauliString zz{0, (QubitMask{1} << k) | (QubitMask{1} << wrap(k + 1, n))};
    factors.push_back(PauliSum(n, {{c, PauliString::identity()}, {cplx(0.0, -parity * s), zz}}));
  }
  return factors;
}

PauliSum basis_change_unitary(const ChainSpec& spec) {
  PauliSum u = PauliSum::identity(spec.L);
  for (const auto& f : basis_change_factors(spec)) u = multiply(u, f);
  return u;
}

}  // namespace tadpole

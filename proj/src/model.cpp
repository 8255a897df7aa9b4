#include "tadpole/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "tadpole/errors.hpp"
#include "tadpole_check.hpp"

namespace tadpole {

TadpoleField::TadpoleField(ModelKind kind, std::vector<double> powered_values)
    : kind_(kind), values_(std::move(powered_values)) {
  for (std::size_t p = 0; p < values_.size(); ++p) {
    if (!(values_[p] > 0.0) || !std::isfinite(values_[p])) {
      throw DomainError(fmt::format("tadpole factor at plaquette {} must be positive, got {}", p,
                                    values_[p]));
    }
  }
}

TadpoleField TadpoleField::ones(ModelKind kind, std::size_t plaquettes) {
  return TadpoleField(kind, std::vector<double>(plaquettes, 1.0));
}

double max_abs_difference(const TadpoleField& a, const TadpoleField& b) {
  if (a.size() != b.size()) throw DimensionError("tadpole fields differ in size");
  double worst = 0.0;
  for (std::size_t p = 0; p < a.size(); ++p) worst = std::max(worst, std::abs(a[p] - b[p]));
  return worst;
}

TadpoleField mix(const TadpoleField& previous, const TadpoleField& measured, double theta) {
  if (previous.size() != measured.size()) throw DimensionError("tadpole fields differ in size");
  if (theta == 1.0) return measured;
  std::vector<double> v(previous.size());
  for (std::size_t p = 0; p < v.size(); ++p) v[p] = theta * measured[p] + (1.0 - theta) * previous[p];
  return TadpoleField(previous.kind(), std::move(v));
}

Model::Model(ChainSpec spec) : spec_(spec) { spec.validate(); }
Model::Model(HoneycombSpec spec) : spec_(spec) { spec.validate(); }

ModelKind Model::kind() const {
  return std::holds_alternative<ChainSpec>(spec_) ? ModelKind::chain : ModelKind::honeycomb;
}

int Model::n_qubits() const {
  return std::visit([](const auto& s) { return s.n_qubits(); }, spec_);
}

double Model::coupling() const {
  return std::visit([](const auto& s) { return s.g; }, spec_);
}

std::string Model::describe() const {
  if (const auto* c = chain()) return fmt::format("chain L={} g={}", c->L, c->g);
  const auto* h = honeycomb();
  return fmt::format("honeycomb {}x{} g={}", h->Lx, h->Ly, h->g);
}

double Model::magnetic_prefactor() const {
  const double g = coupling();
  if (chain()) return 1.0 / (2.0 * g * g);
  return 2.0 / (3.0 * std::numbers::sqrt3 * g * g);
}

PauliSum Model::plaquette_op(int p) const {
  if (const auto* c = chain()) return tadpole::plaquette_op(*c, p);
  const auto* h = honeycomb();
  if (p < 0 || p >= h->n_qubits()) throw IndexError(fmt::format("plaquette {} outside grid", p));
  return hex_plaquette_op(*h, p % h->Lx, p / h->Lx);
}

PauliSum Model::electric_hamiltonian() const {
  if (const auto* c = chain()) return tadpole::electric_hamiltonian(*c);
  return hex_electric_hamiltonian(*honeycomb());
}

PauliSum Model::magnetic_hamiltonian(const TadpoleField& u) const {
  if (const auto* c = chain()) return tadpole::magnetic_hamiltonian(*c, u);
  return hex_magnetic_hamiltonian(*honeycomb(), u);
}

PauliSum Model::hamiltonian(const TadpoleField& u) const {
  return electric_hamiltonian() + magnetic_hamiltonian(u);
}

PauliSum Model::electric_energy_op(int p) const {
  if (const auto* c = chain()) return plaquette_electric_energy_op(*c, p);
  const auto* h = honeycomb();
  if (p < 0 || p >= h->n_qubits()) throw IndexError(fmt::format("plaquette {} outside grid", p));
  return hex_electric_energy_op(*h, p % h->Lx, p / h->Lx);
}

std::string Model::plaquette_label(int p) const {
  if (chain()) return std::to_string(p);
  const auto* h = honeycomb();
  return fmt::format("({},{})", p % h->Lx, p / h->Lx);
}

namespace {

std::vector<CompiledOperator> compile_parts(const Model& model) {
  std::vector<CompiledOperator> parts;
  const int n = model.n_qubits();
  const double diag_const = model.magnetic_prefactor() * 4.0 * model.plaquette_count();
  parts.emplace_back(model.electric_hamiltonian() + PauliSum::identity(n, diag_const));
  for (int p = 0; p < model.plaquette_count(); ++p) parts.emplace_back(model.plaquette_op(p));
  return parts;
}

}  // namespace

TadpoleHamiltonian::TadpoleHamiltonian(const Model& model)
    : TadpoleHamiltonian(model, model.unit_field()) {}

TadpoleHamiltonian::TadpoleHamiltonian(const Model& model, const TadpoleField& u)
    : model_(model),
      field_(u),
      op_(compile_parts(model), std::vector<double>(model.plaquette_count() + 1, 1.0)) {
  const double diag_const = model.magnetic_prefactor() * 4.0 * model.plaquette_count();
  part_norms_.push_back(coefficient_l1_norm(model.electric_hamiltonian()) + std::abs(diag_const));
  for (int p = 0; p < model.plaquette_count(); ++p) {
    part_norms_.push_back(coefficient_l1_norm(model.plaquette_op(p)));
  }
  set_field(u);
}

void TadpoleHamiltonian::set_field(const TadpoleField& u) {
  if (u.kind() != model_.kind() || u.size() != static_cast<std::size_t>(model_.plaquette_count())) {
    throw DimensionError("tadpole field does not match the model");
  }
  field_ = u;
  const double pref = model_.magnetic_prefactor();
  for (std::size_t p = 0; p < u.size(); ++p) op_.set_weight(p + 1, -2.0 * pref / u[p]);
}

double TadpoleHamiltonian::energy(const StateVector& psi) const {
  std::vector<cplx> h_psi(psi.dim());
  op_.apply(psi.amplitudes(), h_psi);
  cplx e{};
  for (std::size_t b = 0; b < psi.dim(); ++b) e += std::conj(psi[b]) * h_psi[b];
  if (std::abs(e.imag()) > 1e-12 * std::max(1.0, norm_bound())) {
    throw ConsistencyError(fmt::format("<H> has imaginary part {}", e.imag()));
  }
  return e.real();
}

TadpoleField TadpoleHamiltonian::measure(const StateVector& psi) const {
  std::vector<double> v(model_.plaquette_count());
  for (std::size_t p = 0; p < v.size(); ++p) {
    const cplx plaq = op_.part(p + 1).expectation(psi.amplitudes());
    if (std::abs(plaq.imag()) > 1e-12) {
      throw ConsistencyError(fmt::format("plaquette {} expectation has imaginary part {}", p, plaq.imag()));
    }
    v[p] = detail::checked_tadpole_power(1.0 + 0.5 * plaq.real(), p);
  }
  return TadpoleField(model_.kind(), std::move(v));
}

double TadpoleHamiltonian::norm_bound() const {
  double s = 0.0;
  for (std::size_t k = 0; k < part_norms_.size(); ++k) s += std::abs(op_.weight(k)) * part_norms_[k];
  return s;
}

}  // namespace tadpole

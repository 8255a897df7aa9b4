#include "tadpole/observables.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SVD>
#include <fmt/format.h>

#include "tadpole/errors.hpp"

namespace tadpole {

ProfileEvaluator::ProfileEvaluator(const Model& model) {
  energy_ops_.reserve(model.plaquette_count());
  for (int p = 0; p < model.plaquette_count(); ++p) energy_ops_.emplace_back(model.electric_energy_op(p));
}

EnergyProfile ProfileEvaluator::electric(const StateVector& psi, double t) const {
  EnergyProfile prof;
  prof.t = t;
  prof.energies.reserve(energy_ops_.size());
  for (const auto& op : energy_ops_) prof.energies.push_back(op.expectation(psi.amplitudes()).real());
  return prof;
}

EnergyProfile electric_energy_profile(const StateVector& psi, const Model& model) {
  EnergyProfile prof;
  for (int p = 0; p < model.plaquette_count(); ++p) {
    prof.energies.push_back(expectation_real(model.electric_energy_op(p), psi));
  }
  return prof;
}

TadpoleField tadpole_profile(const StateVector& psi, const Model& model) {
  return TadpoleHamiltonian(model).measure(psi);
}

double bipartite_entropy(const StateVector& psi, std::span<const int> cut) {
  const int n = psi.n_qubits();
  std::vector<int> a(cut.begin(), cut.end());
  std::sort(a.begin(), a.end());
  if (std::adjacent_find(a.begin(), a.end()) != a.end()) throw ValidationError("bipartite cut repeats a qubit");
  if (a.empty() || static_cast<int>(a.size()) >= n) {
    throw ValidationError("bipartite cut must be a nonempty proper subset of the qubits");
  }
  if (a.front() < 0 || a.back() >= n) throw IndexError("cut qubit outside register");
  std::vector<int> b;
  for (int q = 0; q < n; ++q) {
    if (!std::binary_search(a.begin(), a.end(), q)) b.push_back(q);
  }
  auto gather = [](std::uint64_t idx, const std::vector<int>& bits) {
    std::uint64_t out = 0;
    for (std::size_t k = 0; k < bits.size(); ++k) out |= ((idx >> bits[k]) & 1u) << k;
    return out;
  };
  Eigen::MatrixXcd m(Eigen::Index{1} << a.size(), Eigen::Index{1} << b.size());
  for (std::uint64_t idx = 0; idx < psi.dim(); ++idx) m(gather(idx, a), gather(idx, b)) = psi[idx];
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
  double s = 0.0;
  for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k) {
    const double p = svd.singularValues()(k) * svd.singularValues()(k);
    if (p > 1e-300) s -= p * std::log2(p);
  }
  return std::max(0.0, s);
}

StabilizerRenyi stabilizer_renyi(const StateVector& psi) {
  const int n = psi.n_qubits();
  if (n > kMaxStabilizerRenyiQubits) {
    throw DimensionError(fmt::format("stabilizer Renyi entropy refuses {} qubits: cost grows as 8^n "
                                      "(limit {})",
                                      n, kMaxStabilizerRenyiQubits));
  }
  const std::size_t d = psi.dim();
  const double inv_d = 1.0 / static_cast<double>(d);

  // For each X mask, a Walsh-Hadamard transform over b of conj(psi[b^x]) psi[b]
  // yields <X^x Z^z> for every Z mask at once.
  struct Partial {
    double xi = 0.0, xi2 = 0.0, entropy = 0.0;
  };
  std::vector<Partial> parts(d);
#pragma omp parallel for schedule(static)
  for (long long xl = 0; xl < static_cast<long long>(d); ++xl) {
    const std::size_t x = static_cast<std::size_t>(xl);
    std::vector<cplx> w(d);
    for (std::size_t b = 0; b < d; ++b) w[b] = std::conj(psi[b ^ x]) * psi[b];
    for (std::size_t h = 1; h < d; h <<= 1) {
      for (std::size_t i = 0; i < d; i += 2 * h) {
        for (std::size_t j = i; j < i + h; ++j) {
          const cplx u = w[j];
          const cplx v = w[j + h];
          w[j] = u + v;
          w[j + h] = u - v;
        }
      }
    }
    Partial p;
    for (const cplx& e : w) {
      const double xi = std::norm(e) * inv_d;
      p.xi += xi;
      p.xi2 += xi * xi;
      if (xi > 0.0) p.entropy -= xi * std::log2(xi);
    }
    parts[x] = p;
  }
  Partial total;
  for (const auto& p : parts) {
    total.xi += p.xi;
    total.xi2 += p.xi2;
    total.entropy += p.entropy;
  }
  const double norm_sq = psi.norm() * psi.norm();
  if (std::abs(total.xi - 1.0) > 1e-10 || std::abs(norm_sq - 1.0) > 1e-10) {
    throw ConsistencyError(fmt::format("Pauli distribution sums to {} (state norm^2 {})", total.xi, norm_sq));
  }
  StabilizerRenyi r;
  r.xi_sum = total.xi;
  r.m1 = total.entropy - n;
  r.m2 = -std::log2(total.xi2) - n;
  r.m1_density = r.m1 / n;
  r.m2_density = r.m2 / n;
  return r;
}

double stabilizer_renyi(const StateVector& psi, int alpha) {
  if (alpha != 1 && alpha != 2) throw ValidationError("stabilizer Renyi order must be 1 or 2");
  const StabilizerRenyi r = stabilizer_renyi(psi);
  return alpha == 1 ? r.m1 : r.m2;
}

}  // namespace tadpole

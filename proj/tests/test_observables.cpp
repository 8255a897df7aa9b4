#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "dense_oracle.hpp"
#include "tadpole/errors.hpp"
#include "tadpole/evolution.hpp"
#include "tadpole/observables.hpp"

using namespace tadpole;

namespace {

// Relabel qubits: bit k of the input index goes to bit perm[k].
StateVector permute_qubits(const StateVector& psi, const std::vector<int>& perm) {
  StateVector out(psi.n_qubits());
  for (std::uint64_t b = 0; b < psi.dim(); ++b) {
    std::uint64_t t = 0;
    for (int k = 0; k < psi.n_qubits(); ++k) {
      if ((b >> k) & 1) t |= std::uint64_t{1} << perm[k];
    }
    out[t] = psi[b];
  }
  return out;
}

// Direct sum over all 4^n strings with the library's single-string expectation.
std::pair<double, double> naive_sre(const StateVector& psi) {
  const int n = psi.n_qubits();
  const double d = double(psi.dim());
  double h = 0.0, s2 = 0.0;
  for (QubitMask x = 0; x < psi.dim(); ++x) {
    for (QubitMask z = 0; z < psi.dim(); ++z) {
      // X^x Z^z is Hermitian up to the phase i^{|x&z|}
      const cplx e = string_expectation({x, z}, psi.amplitudes());
      const double xi = std::norm(e) / d;
      if (xi > 0.0) h -= xi * std::log2(xi);
      s2 += xi * xi;
    }
  }
  return {h - n, -std::log2(s2) - n};
}

}  // namespace

TEST_CASE("electric energy profiles") {
  const Model chain(ChainSpec{10, 0.5});
  const EnergyProfile p = electric_energy_profile(StateVector::basis(10, 1), chain);
  const std::vector<double> expect{0.375, 0.09375, 0, 0, 0, 0, 0, 0, 0, 0.09375};
  REQUIRE(p.energies.size() == 10);
  for (int i = 0; i < 10; ++i) CHECK(p.energies[i] == doctest::Approx(expect[i]).epsilon(1e-14));
  for (double e : electric_energy_profile(StateVector::basis(10, 0), chain).energies) CHECK(e == 0.0);

  const Model hex(HoneycombSpec{7, 3, 0.5});
  const EnergyProfile h = electric_energy_profile(StateVector::basis(21, 1), hex);
  for (int q = 0; q < 21; ++q) {
    const double want = q == 0 ? 0.974279 : (q == 1 || q == 7) ? 0.162380 : 0.0;
    CHECK(h.energies[q] == doctest::Approx(want).epsilon(1e-6));
  }

  std::mt19937_64 rng(3);
  const StateVector psi = oracle::random_state(10, rng);
  for (double e : electric_energy_profile(psi, chain).energies) CHECK(e >= 0.0);
}

TEST_CASE("tadpole profile on basis states and the chain vacuum") {
  const Model chain(ChainSpec{10, 0.5});
  const TadpoleField f = tadpole_profile(StateVector::basis(10, 37), chain);
  for (double v : f.values()) CHECK(v == 1.0);

  const VacuumResult vac = self_consistent_vacuum(chain);
  const TadpoleField u = tadpole_profile(vac.state, chain);
  for (double v : u.values()) CHECK(v == doctest::Approx(1.33828).epsilon(5e-6));
  const EnergyProfile e = electric_energy_profile(vac.state, chain);
  for (double v : e.energies) CHECK(std::abs(v - e.energies[0]) <= 1e-8);
}

TEST_CASE("bipartite entropy") {
  const std::vector<int> half{0, 1, 2, 3, 4};
  const StateVector psi1 = StateVector::basis(10, 1);
  CHECK(bipartite_entropy(psi1, half) == doctest::Approx(0.0).epsilon(1e-12));
  for (int q = 0; q < 10; ++q) {
    const std::vector<int> one{q};
    CHECK(std::abs(bipartite_entropy(psi1, one)) <= 1e-12);
  }

  StateVector bell(2);
  bell[0b00] = M_SQRT1_2;
  bell[0b11] = M_SQRT1_2;
  CHECK(bipartite_entropy(bell, std::vector<int>{0}) == doctest::Approx(1.0).epsilon(1e-12));

  std::mt19937_64 rng(5);
  const StateVector r = oracle::random_state(7, rng);
  const std::vector<int> cut{0, 3, 5}, comp{1, 2, 4, 6};
  CHECK(std::abs(bipartite_entropy(r, cut) - bipartite_entropy(r, comp)) <= 1e-10);

  const Model chain(ChainSpec{10, 0.5});
  const VacuumResult vac = self_consistent_vacuum(chain);
  const StateVector psi2 = prepare_initial_state(InitialKind::psi2, chain, &vac);
  CHECK(bipartite_entropy(psi2, half) > 0.0);

  CHECK_THROWS_AS(bipartite_entropy(bell, std::vector<int>{}), ValidationError);
  CHECK_THROWS_AS(bipartite_entropy(bell, std::vector<int>{0, 1}), ValidationError);
  CHECK_THROWS_AS(bipartite_entropy(bell, std::vector<int>{2}), IndexError);
  CHECK_THROWS_AS(bipartite_entropy(bell, std::vector<int>{0, 0}), ValidationError);
}

TEST_CASE("stabilizer Renyi entropies") {
  for (std::uint64_t b : {0u, 5u, 31u}) {
    const StabilizerRenyi s = stabilizer_renyi(StateVector::basis(5, b));
    CHECK(std::abs(s.m1) <= 1e-12);
    CHECK(std::abs(s.m2) <= 1e-12);
  }
  const StateVector plus(1, {M_SQRT1_2, M_SQRT1_2});
  CHECK(std::abs(stabilizer_renyi(plus, 1)) <= 1e-12);
  CHECK(std::abs(stabilizer_renyi(plus, 2)) <= 1e-12);

  // agreement with the brute-force sum over all strings
  std::mt19937_64 rng(6);
  for (int n : {1, 2, 3, 4}) {
    const StateVector psi = oracle::random_state(n, rng);
    const StabilizerRenyi s = stabilizer_renyi(psi);
    const auto [m1, m2] = naive_sre(psi);
    CHECK(s.m1 == doctest::Approx(m1).epsilon(1e-10));
    CHECK(s.m2 == doctest::Approx(m2).epsilon(1e-10));
    CHECK(std::abs(s.xi_sum - 1.0) <= 1e-10);
    CHECK(s.m1_density == doctest::Approx(s.m1 / n));
  }

  const StateVector psi = oracle::random_state(4, rng);
  std::vector<int> perm{2, 0, 3, 1};
  const StabilizerRenyi a = stabilizer_renyi(psi);
  const StabilizerRenyi b = stabilizer_renyi(permute_qubits(psi, perm));
  CHECK(std::abs(a.m1 - b.m1) <= 1e-12);
  CHECK(std::abs(a.m2 - b.m2) <= 1e-12);

  CHECK_THROWS_AS(stabilizer_renyi(StateVector::basis(13, 0)), DimensionError);
  CHECK_THROWS_AS(stabilizer_renyi(plus, 3), ValidationError);
}

TEST_CASE("stabilizer Renyi densities of the chain vacuum") {
  const Model chain(ChainSpec{10, 0.5});
  const VacuumResult vac = self_consistent_vacuum(chain);
  const StabilizerRenyi s = stabilizer_renyi(vac.state);
  CHECK(s.m1_density == doctest::Approx(0.445).epsilon(0.0005 / 0.445));
  CHECK(s.m2_density == doctest::Approx(0.337).epsilon(0.0005 / 0.337));
}

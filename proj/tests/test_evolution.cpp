#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "dense_oracle.hpp"
#include "tadpole/errors.hpp"
#include "tadpole/evolution.hpp"
#include "tadpole/observables.hpp"

using namespace tadpole;

namespace {

double vec_distance(const StateVector& a, const StateVector& b) {
  return (oracle::to_eigen(a) - oracle::to_eigen(b)).norm();
}

EvolutionConfig short_run(EvolutionMode mode, double t_max, double dt = 0.025) {
  EvolutionConfig c;
  c.mode = mode;
  c.t_max = t_max;
  c.dt = dt;
  return c;
}

}  // namespace

TEST_CASE("single-qubit rotation") {
  const PauliSum z = PauliSum::single(1, PauliString::z_on(0));
  const CompiledOperator cz(z);
  const LinearOperator op{2, [&](std::span<const cplx> in, std::span<cplx> out) {
                            std::fill(out.begin(), out.end(), cplx(0.0));
                            cz.apply_add(in, out);
                          }};
  const StateVector plus(1, {M_SQRT1_2, M_SQRT1_2});
  // exp(-i Z dt)|+> = (e^{-i dt}|0> + e^{i dt}|1>)/sqrt2
  for (double dt : {std::numbers::pi / 4, std::numbers::pi / 2}) {
    const cplx e = std::exp(cplx(0, -dt));
    const StateVector expect(1, {e * M_SQRT1_2, std::conj(e) * M_SQRT1_2});
    CHECK(vec_distance(step_propagate(plus, z, dt), expect) <= 1e-14);
    CHECK(vec_distance(krylov_propagate(plus, op, dt), expect) <= 1e-12);
  }
}

TEST_CASE("zero time step is the identity") {
  std::mt19937_64 rng(1);
  const Model m(ChainSpec{8, 0.5});
  const StateVector psi = oracle::random_state(8, rng);
  const PauliSum h = m.hamiltonian(m.unit_field());
  CHECK(vec_distance(step_propagate(psi, h, 0.0), psi) == 0.0);
  CHECK(vec_distance(dense_propagate(psi, h, 0.0), psi) <= 1e-13);
}

TEST_CASE("Krylov propagation matches the dense exponential") {
  std::mt19937_64 rng(2);
  const Model m(ChainSpec{8, 0.5});
  std::vector<double> u4(8);
  for (int i = 0; i < 8; ++i) u4[i] = 1.1 + 0.03 * i;
  const TadpoleField u(ModelKind::chain, u4);
  const TadpoleHamiltonian th(m, u);
  const StateVector psi = oracle::random_state(8, rng);
  for (double dt : {0.025, 0.1, 1.0}) {
    PropagationStats stats;
    const StateVector k = krylov_propagate(psi, th.linear_operator(), dt, {}, &stats);
    CHECK(vec_distance(k, dense_propagate(psi, th.as_pauli_sum(), dt)) <= 1e-10);
    CHECK(std::abs(k.norm() - 1.0) <= 1e-12);
    if (dt == 1.0) CHECK(stats.substeps >= 1);
  }
  // a tiny subspace forces step halving
  PropagatorOptions tight;
  tight.krylov_dim = 6;
  PropagationStats stats;
  const StateVector k = krylov_propagate(psi, th.linear_operator(), 0.5, tight, &stats);
  CHECK(stats.substeps > 1);
  CHECK(vec_distance(k, dense_propagate(psi, th.as_pauli_sum(), 0.5)) <= 1e-10);
}

TEST_CASE("initial states") {
  const Model chain(ChainSpec{10, 0.5});
  const StateVector psi1 = prepare_initial_state(InitialKind::psi1, chain, nullptr);
  CHECK(psi1[1] == cplx(1.0));
  CHECK(psi1.norm() == 1.0);
  CHECK_THROWS_AS(prepare_initial_state(InitialKind::psi2, chain, nullptr), ValidationError);

  const Model small(ChainSpec{6, 0.5});
  const VacuumResult vac = self_consistent_vacuum(small);
  const StateVector psi2 = prepare_initial_state(InitialKind::psi2, small, &vac);
  CHECK(std::abs(psi2.norm() - 1.0) <= 1e-14);
  const StateVector image = apply(small.plaquette_op(0), vac.state);
  CHECK(std::abs(std::abs(inner(image, psi2)) - image.norm()) <= 1e-12);
}

TEST_CASE("unimproved evolution conserves norm and energy") {
  const Model m(ChainSpec{10, 0.5});
  const StateVector psi1 = prepare_initial_state(InitialKind::psi1, m, nullptr);
  const TimeSeries s = evolve(psi1, m, nullptr, short_run(EvolutionMode::unimproved, 10.0));
  REQUIRE(s.records.size() == 401);
  const double e0 = s.records.front().energy_total;
  double drift = 0.0;
  for (const auto& r : s.records) {
    CHECK(std::abs(r.norm - 1.0) <= 1e-10);
    CHECK(r.iterations == 0);
    CHECK_FALSE(r.residual.has_value());
    drift = std::max(drift, std::abs(r.energy_total - e0));
  }
  CHECK(drift <= 1e-8);
}

TEST_CASE("dynamical mode with the field pinned to one is the unimproved evolution") {
  const Model m(ChainSpec{8, 0.5});
  const StateVector psi1 = prepare_initial_state(InitialKind::psi1, m, nullptr);
  EvolutionConfig pinned = short_run(EvolutionMode::dynamical, 2.0);
  pinned.pin_unit_field = true;
  const TimeSeries a = evolve(psi1, m, nullptr, pinned);
  const TimeSeries b = evolve(psi1, m, nullptr, short_run(EvolutionMode::unimproved, 2.0));
  REQUIRE(a.records.size() == b.records.size());
  for (std::size_t k = 0; k < a.records.size(); ++k) {
    for (std::size_t i = 0; i < 8; ++i) CHECK(std::abs(a.records[k].energies[i] - b.records[k].energies[i]) <= 1e-10);
  }
  CHECK(vec_distance(a.final_state, b.final_state) <= 1e-10);
}

TEST_CASE("dynamical mode: certificate, parity and convergence rate") {
  const int L = 10;
  const Model m(ChainSpec{L, 0.5});
  const VacuumResult vac = self_consistent_vacuum(m);
  for (InitialKind kind : {InitialKind::psi1, InitialKind::psi2}) {
    CAPTURE(to_string(kind));
    const StateVector psi0 = prepare_initial_state(kind, m, &vac);
    const TimeSeries s = evolve(psi0, m, &vac, short_run(EvolutionMode::dynamical, 1.0));
    if (kind == InitialKind::psi1) {
      for (std::size_t i = 0; i < std::size_t(L); ++i) CHECK(s.records.front().tadpole[i] == 1.0);
    }
    for (const auto& r : s.records) {
      CHECK(std::abs(r.norm - 1.0) <= 1e-10);
      for (int i = 1; i < L; ++i) {
        CHECK(std::abs(r.energies[i] - r.energies[L - i]) <= 1e-9);
        CHECK(std::abs(r.tadpole[i] - r.tadpole[L - i]) <= 1e-9);
      }
      if (r.step > 0) {
        REQUIRE(r.residual.has_value());
        CHECK(*r.residual <= 1e-10);
        // geometric decay of the within-step residuals
        const auto& tr = r.residual_trace;
        if (tr.size() >= 3 && tr.front() > 1e-13) {
          const double c = std::pow(tr.back() / tr.front(), 1.0 / double(tr.size() - 1));
          CHECK(c < 1.0);
        }
      }
    }
    const TadpoleHamiltonian h(m);
    CHECK(max_abs_difference(h.measure(s.final_state), s.records.back().tadpole) <= 2e-10);
    int steps = 0;
    for (const auto& [iters, count] : s.iteration_histogram) steps += count;
    CHECK(steps == 40);
  }
}

TEST_CASE("time-step error of the dynamical scheme is first order") {
  const Model m(ChainSpec{6, 0.5});
  const VacuumResult vac = self_consistent_vacuum(m);
  const StateVector psi2 = prepare_initial_state(InitialKind::psi2, m, &vac);
  std::vector<double> e;
  for (double dt : {0.05, 0.025, 0.0125}) {
    e.push_back(evolve(psi2, m, &vac, short_run(EvolutionMode::dynamical, 1.0, dt)).records.back().energies[0]);
  }
  const double ratio = (e[0] - e[1]) / (e[1] - e[2]);
  CHECK(ratio == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("configuration validation") {
  const Model m(ChainSpec{4, 0.5});
  const StateVector psi = StateVector::basis(4, 1);
  EvolutionConfig c;
  c.dt = 0.0;
  CHECK_THROWS_AS(evolve(psi, m, nullptr, c), ValidationError);
  c = EvolutionConfig{};
  c.t_max = 0.01;
  CHECK_THROWS_AS(evolve(psi, m, nullptr, c), ValidationError);
  c = EvolutionConfig{};
  c.mode = EvolutionMode::vacuum;
  CHECK_THROWS_AS(evolve(psi, m, nullptr, c), ValidationError);
  c = EvolutionConfig{};
  c.sc_tol = -1.0;
  CHECK_THROWS_AS(evolve(psi, m, nullptr, c), ValidationError);
  CHECK_THROWS_AS(evolve(StateVector::basis(3, 0), m, nullptr, EvolutionConfig{}), DimensionError);

  CHECK(parse_mode("vacuum") == EvolutionMode::vacuum);
  CHECK(parse_initial("psi2") == InitialKind::psi2);
  CHECK_THROWS_AS(parse_mode("midpoint"), ValidationError);

  c = EvolutionConfig{};
  c.t_max = 1.0;
  c.record_every = 4;
  CHECK(c.step_count() == 40);
  CHECK(c.record_count() == 11);
}

TEST_CASE("self-consistency failure carries the residual trace") {
  const Model m(ChainSpec{6, 0.5});
  const VacuumResult vac = self_consistent_vacuum(m);
  EvolutionConfig c = short_run(EvolutionMode::dynamical, 0.1);
  c.sc_max_iter = 1;
  try {
    evolve(prepare_initial_state(InitialKind::psi2, m, &vac), m, &vac, c);
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    CHECK(e.residuals().size() == 1);
  }
}

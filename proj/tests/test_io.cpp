#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "dense_oracle.hpp"
#include "tadpole/errors.hpp"
#include "tadpole/io.hpp"
#include "tadpole/observables.hpp"

using namespace tadpole;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    std::random_device rd;
    path = fs::temp_directory_path() / ("tadpole_io_" + std::to_string(rd()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_series(const fs::path& p, const Model& m, const EvolutionConfig& cfg) {
  TimeSeriesCsvWriter w(p, m.plaquette_count());
  evolve(StateVector::basis(m.n_qubits(), 1), m, nullptr, cfg, [&](const TimeRecord& r) { w.write(r); });
}

}  // namespace

TEST_CASE("number formatting") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(1.0) == "1");
  CHECK(std::stod(format_double(6.063464340123)) == 6.063464340123);
}

TEST_CASE("time-series CSV layout") {
  CHECK(csv_header(3) == "t,iters,residual,energy_total,norm,E_0,E_1,E_2,u_0,u_1,u_2");

  TempDir dir;
  const Model m(ChainSpec{4, 0.5});
  EvolutionConfig cfg;
  cfg.mode = EvolutionMode::unimproved;
  cfg.t_max = 1.0;
  cfg.record_every = 3;
  write_series(dir.path / "a.csv", m, cfg);
  const CsvTable t = read_csv(dir.path / "a.csv");
  REQUIRE(t.header.size() == 5 + 2 * 4);
  CHECK(t.rows.size() == std::size_t(40 / 3 + 1));
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    CHECK(t.rows[r].size() == t.header.size());
    CHECK(t.rows[r][t.column("iters")] == "0");
    CHECK(t.rows[r][t.column("residual")].empty());
    CHECK(t.value(r, "u_2") == 1.0);
  }
  CHECK(t.value(1, "t") == doctest::Approx(0.075));

  // identical configuration, identical bytes
  write_series(dir.path / "b.csv", m, cfg);
  CHECK(slurp(dir.path / "a.csv") == slurp(dir.path / "b.csv"));

  cfg.mode = EvolutionMode::dynamical;
  write_series(dir.path / "c.csv", m, cfg);
  const CsvTable d = read_csv(dir.path / "c.csv");
  CHECK(d.rows.front()[d.column("residual")].empty());
  CHECK(d.value(1, "iters") >= 1);
  CHECK(d.value(1, "residual") <= 1e-10);
}

TEST_CASE("state dump round trip") {
  TempDir dir;
  std::mt19937_64 rng(3);
  const StateVector psi = oracle::random_state(8, rng);
  save_state(dir.path / "s.bin", psi);
  const StateVector back = load_state(dir.path / "s.bin");
  REQUIRE(back.n_qubits() == 8);
  CHECK((oracle::to_eigen(back) - oracle::to_eigen(psi)).cwiseAbs().maxCoeff() == 0.0);
  CHECK(fs::file_size(dir.path / "s.bin") == 24 + 256 * 16);

  const Model m(ChainSpec{8, 0.5});
  const auto a = electric_energy_profile(psi, m).energies;
  const auto b = electric_energy_profile(back, m).energies;
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) <= 1e-12);
  CHECK(std::abs(stabilizer_renyi(psi, 2) - stabilizer_renyi(back, 2)) <= 1e-12);

  std::ofstream(dir.path / "junk.bin") << "not a state";
  CHECK_THROWS_AS(load_state(dir.path / "junk.bin"), ValidationError);
  CHECK_THROWS_AS(load_state(dir.path / "missing.bin"), ValidationError);
}

TEST_CASE("manifest round trip and versioning") {
  RunManifest m;
  m.command = "evolve";
  m.model = {{"type", "chain"}, {"L", 10}, {"g", 0.5}};
  m.config = {{"dt", 0.025}, {"t_max", 10.0}};
  m.initial = "psi2";
  m.mode = "dynamical";
  m.wall_clock_seconds = 12.345678901234567;
  m.vacuum_iterations = 5;
  m.step_iteration_histogram = {{3, 120}, {4, 280}};
  m.outputs = {"out/timeseries.csv", "out/vacuum.json"};

  TempDir dir;
  write_json(dir.path / "manifest.json", manifest_to_json(m));
  const RunManifest back = manifest_from_json(read_json(dir.path / "manifest.json"));
  CHECK(back == m);

  RunManifest none = m;
  none.vacuum_iterations.reset();
  CHECK(manifest_from_json(manifest_to_json(none)) == none);

  nlohmann::json future = manifest_to_json(m);
  future["schema_version"] = "2.0";
  CHECK_THROWS_AS(manifest_from_json(future), ValidationError);
  future["schema_version"] = "1.7";
  CHECK_NOTHROW(manifest_from_json(future));
}

TEST_CASE("vacuum file round trip") {
  TempDir dir;
  const Model m(ChainSpec{6, 0.5});
  const VacuumResult v = self_consistent_vacuum(m);
  save_state(dir.path / "vacuum.state", v.state);
  write_json(dir.path / "vacuum.json", vacuum_to_json(m, v, "vacuum.state"));
  const nlohmann::json j = read_json(dir.path / "vacuum.json");
  CHECK(j.at("u4").size() == 6);
  CHECK(j.at("energy_density").get<double>() == v.energy_density);

  const VacuumResult back = load_vacuum(dir.path / "vacuum.json", m);
  CHECK(max_abs_difference(back.tadpole, v.tadpole) == 0.0);
  CHECK(back.total_energy == v.total_energy);
  CHECK(std::abs(inner(back.state, v.state) - cplx(1.0)) <= 1e-14);
  CHECK_THROWS_AS(load_vacuum(dir.path / "vacuum.json", Model(ChainSpec{8, 0.5})), ValidationError);

  CHECK(model_from_json(model_to_json(Model(HoneycombSpec{3, 2, 0.7}))).describe() ==
        Model(HoneycombSpec{3, 2, 0.7}).describe());
  CHECK_THROWS_AS(model_from_json({{"type", "cube"}}), ValidationError);
}

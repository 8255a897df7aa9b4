#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>

#include "tadpole/io.hpp"

using namespace tadpole;
namespace fs = std::filesystem;

namespace {

struct Run {
  fs::path out;
  int code = -1;
};

fs::path fresh_dir(const std::string& tag) {
  std::random_device rd;
  const fs::path p = fs::temp_directory_path() / ("tadpole_cli_" + tag + "_" + std::to_string(rd()));
  fs::remove_all(p);
  return p;
}

Run run(const std::string& tag, const std::string& args) {
  Run r;
  r.out = fresh_dir(tag);
  const std::string cmd = std::string(TADPOLE_CLI) + " " + args + " --out " + r.out.string() + " > " +
                          (fs::temp_directory_path() / (tag + ".log")).string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace

TEST_CASE("validation failures exit with code 2") {
  CHECK(run("l2", "ground-state --L 2").code == 2);
  CHECK(run("badg", "ground-state --L 4 --g -1").code == 2);
  CHECK(run("badmode", "evolve --L 4 --mode sideways").code == 2);
  CHECK(run("badflag", "evolve --no-such-flag 3").code == 2);
  CHECK(run("nosub", "--L 4").code == 2);

  const Run r = run("l2m", "ground-state --L 2");
  const RunManifest m = manifest_from_json(read_json(r.out / "manifest.json"));
  CHECK(m.status == "error");
  CHECK_FALSE(m.error.empty());
  fs::remove_all(r.out);
}

TEST_CASE("unimproved evolution CSV and manifest") {
  const Run r = run("unimp", "evolve --L 6 --mode unimproved --tmax 0.5 --record-every 2");
  REQUIRE(r.code == 0);
  const CsvTable t = read_csv(r.out / "timeseries.csv");
  CHECK(t.rows.size() == 20 / 2 + 1);
  for (std::size_t k = 0; k < t.rows.size(); ++k) {
    CHECK(t.rows[k][t.column("iters")] == "0");
    CHECK(t.rows[k][t.column("residual")].empty());
  }
  const RunManifest m = manifest_from_json(read_json(r.out / "manifest.json"));
  CHECK(m.status == "ok");
  CHECK(m.command == "evolve");
  CHECK(m.mode == "unimproved");
  CHECK(m.initial == "psi1");
  CHECK(m.model.at("L") == 6);
  for (const auto& f : m.outputs) CHECK(fs::exists(f));
  fs::remove_all(r.out);
}

TEST_CASE("dynamical psi1 run starts from the unit field") {
  const Run r = run("dyn", "evolve --L 6 --tmax 0.25");
  REQUIRE(r.code == 0);
  const CsvTable t = read_csv(r.out / "timeseries.csv");
  CHECK(t.rows.size() == 11);
  for (int i = 0; i < 6; ++i) CHECK(t.value(0, "u_" + std::to_string(i)) == 1.0);
  for (std::size_t k = 1; k < t.rows.size(); ++k) CHECK(t.value(k, "residual") <= 1e-10);
  const RunManifest m = manifest_from_json(read_json(r.out / "manifest.json"));
  int steps = 0;
  for (const auto& [iters, count] : m.step_iteration_histogram) steps += count;
  CHECK(steps == 10);
  fs::remove_all(r.out);
}

TEST_CASE("config file with flag override") {
  const fs::path cfg = fs::temp_directory_path() / "tadpole_cli_test.ini";
  std::ofstream(cfg) << "L = 5\ng = 0.8\nmode = unimproved\ntmax = 0.1\n";
  const Run r = run("cfg", "evolve --config " + cfg.string() + " --L 4");
  REQUIRE(r.code == 0);
  const RunManifest m = manifest_from_json(read_json(r.out / "manifest.json"));
  CHECK(m.model.at("L") == 4);
  CHECK(m.model.at("g") == 0.8);
  CHECK(read_csv(r.out / "timeseries.csv").rows.size() == 5);
  fs::remove_all(r.out);
  fs::remove(cfg);
}

TEST_CASE("ground state and observables on the benchmark chain") {
  const Run gs = run("gs", "ground-state --L 10 --g 0.5");
  REQUIRE(gs.code == 0);
  const nlohmann::json v = read_json(gs.out / "vacuum.json");
  for (double u4 : v.at("u4")) CHECK(u4 == doctest::Approx(1.33828).epsilon(1e-4 / 1.33828));
  CHECK(v.at("energy_density").get<double>() == doctest::Approx(6.06346).epsilon(1e-4 / 6.06346));
  REQUIRE(fs::exists(gs.out / "vacuum.state"));

  const Run ob = run("ob", "observables --L 10 --sre --vacuum " + (gs.out / "vacuum.json").string());
  REQUIRE(ob.code == 0);
  const nlohmann::json rep = read_json(ob.out / "observables.json");
  CHECK(rep.at("stabilizer_renyi").at("M1_per_L").get<double>() == doctest::Approx(0.445).epsilon(2e-3 / 0.445));
  CHECK(rep.at("stabilizer_renyi").at("M2_per_L").get<double>() == doctest::Approx(0.337).epsilon(2e-3 / 0.337));

  const Run st = run("st", "observables --L 10 --profiles --state " + (gs.out / "vacuum.state").string());
  REQUIRE(st.code == 0);
  for (double u4 : read_json(st.out / "observables.json").at("tadpole_profile")) {
    CHECK(u4 == doctest::Approx(1.33828).epsilon(1e-4 / 1.33828));
  }
  fs::remove_all(gs.out);
  fs::remove_all(ob.out);
  fs::remove_all(st.out);
}

TEST_CASE("psi1 entropies vanish in the report") {
  const Run r = run("ent", "observables --L 8 --source psi1");
  REQUIRE(r.code == 0);
  const nlohmann::json rep = read_json(r.out / "observables.json");
  CHECK(rep.at("bipartite_entropy").at("values").size() == 7);
  for (double s : rep.at("bipartite_entropy").at("values")) CHECK(std::abs(s) <= 1e-12);
  CHECK(std::abs(rep.at("stabilizer_renyi").at("M1").get<double>()) <= 1e-12);
  fs::remove_all(r.out);
}

TEST_CASE("numerical failure exits with code 3 and keeps the partial CSV") {
  const Run r = run("fail", "evolve --L 6 --initial psi2 --tmax 0.5 --sc-max-iter 1");
  CHECK(r.code == 3);
  const RunManifest m = manifest_from_json(read_json(r.out / "manifest.json"));
  CHECK(m.status == "error");
  const CsvTable t = read_csv(r.out / "timeseries.csv");
  CHECK(t.rows.size() >= 1);
  CHECK(t.rows.size() < 21);
  fs::remove_all(r.out);
}

TEST_CASE("SRE size refusal is a validation error") {
  const Run r = run("sre13", "observables --L 13 --source psi1 --sre");
  CHECK(r.code == 2);
  fs::remove_all(r.out);
}

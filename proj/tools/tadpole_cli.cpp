// tadpole: command-line driver for vacuum solves, time evolution and static
// observables. Exit codes: 0 success, 2 validation error, 3 numerical failure.

#include <chrono>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "tadpole/errors.hpp"
#include "tadpole/evolution.hpp"
#include "tadpole/ground_state.hpp"
#include "tadpole/io.hpp"
#include "tadpole/observables.hpp"

namespace fs = std::filesystem;
using namespace tadpole;

namespace {

struct Settings {
  std::string model = "chain";
  int L = 10;
  int Lx = 7;
  int Ly = 3;
  double g = 0.5;
  std::string out = "tadpole_out";

  // vacuum
  double tol = 1e-10;
  int max_iter = 200;
  double damping = 1.0;

  // evolution
  double dt = 0.025;
  double tmax = 10.0;
  std::string mode = "dynamical";
  std::string initial = "psi1";
  double sc_tol = 1e-10;
  int sc_max_iter = 100;
  int record_every = 1;
  int krylov_dim = 30;
  double propagator_tol = 1e-12;
  std::string vacuum_file;

  // observables
  std::string state_file;
  std::string source = "vacuum";
  bool sre = false;
  bool entropy = false;
  bool profiles = false;
};

Model make_model(const Settings& s) {
  if (s.model == "chain") return Model(ChainSpec{s.L, s.g});
  if (s.model == "honeycomb") return Model(HoneycombSpec{s.Lx, s.Ly, s.g});
  throw ValidationError("unknown model '" + s.model + "' (chain or honeycomb)");
}

VacuumOptions vacuum_options(const Settings& s) {
  VacuumOptions o;
  o.tol = s.tol;
  o.max_iter = s.max_iter;
  o.damping = s.damping;
  o.progress = [](int it, double r) { std::cerr << "  vacuum iteration " << it << ": residual " << r << '\n'; };
  return o;
}

EvolutionConfig evolution_config(const Settings& s) {
  EvolutionConfig c;
  c.dt = s.dt;
  c.t_max = s.tmax;
  c.mode = parse_mode(s.mode);
  c.sc_tol = s.sc_tol;
  c.sc_max_iter = s.sc_max_iter;
  c.damping = s.damping;
  c.record_every = s.record_every;
  c.propagator.krylov_dim = s.krylov_dim;
  c.propagator.tol = s.propagator_tol;
  c.validate();
  return c;
}

nlohmann::json evolution_config_json(const EvolutionConfig& c) {
  return {{"dt", c.dt},
          {"t_max", c.t_max},
          {"sc_tol", c.sc_tol},
          {"sc_max_iter", c.sc_max_iter},
          {"damping", c.damping},
          {"record_every", c.record_every},
          {"krylov_dim", c.propagator.krylov_dim},
          {"propagator_tol", c.propagator.tol}};
}

// Solves the vacuum and writes vacuum.json + vacuum.state into `dir`.
VacuumResult solve_and_store_vacuum(const Model& model, const Settings& s, const fs::path& dir,
                                    RunManifest& manifest) {
  std::cerr << "solving self-consistent vacuum for " << model.describe() << '\n';
  VacuumResult vac = self_consistent_vacuum(model, vacuum_options(s));
  save_state(dir / "vacuum.state", vac.state);
  write_json(dir / "vacuum.json", vacuum_to_json(model, vac, "vacuum.state"));
  manifest.outputs.push_back((dir / "vacuum.json").string());
  manifest.outputs.push_back((dir / "vacuum.state").string());
  manifest.vacuum_iterations = vac.iterations;
  return vac;
}

void cmd_ground_state(const Settings& s, RunManifest& manifest) {
  const Model model = make_model(s);
  manifest.model = model_to_json(model);
  manifest.config = {{"tol", s.tol}, {"max_iter", s.max_iter}, {"damping", s.damping}};
  const VacuumResult vac = solve_and_store_vacuum(model, s, s.out, manifest);
  std::cout << "energy " << format_double(vac.total_energy) << '\n'
            << "energy_density " << format_double(vac.energy_density) << '\n'
            << "iterations " << vac.iterations << '\n';
}

void cmd_evolve(const Settings& s, RunManifest& manifest) {
  const Model model = make_model(s);
  const EvolutionConfig cfg = evolution_config(s);
  const InitialKind initial = parse_initial(s.initial);
  manifest.model = model_to_json(model);
  manifest.config = evolution_config_json(cfg);
  manifest.initial = to_string(initial);
  manifest.mode = to_string(cfg.mode);

  std::optional<VacuumResult> vacuum;
  if (initial == InitialKind::psi2 || cfg.mode == EvolutionMode::vacuum) {
    if (!s.vacuum_file.empty()) {
      vacuum = load_vacuum(s.vacuum_file, model);
      manifest.config["vacuum_file"] = s.vacuum_file;
    } else {
      vacuum = solve_and_store_vacuum(model, s, s.out, manifest);
    }
  }
  const StateVector psi0 = prepare_initial_state(initial, model, vacuum ? &*vacuum : nullptr);

  const fs::path csv = fs::path(s.out) / "timeseries.csv";
  manifest.outputs.push_back(csv.string());
  TimeSeriesCsvWriter writer(csv, model.plaquette_count());
  const TimeSeries series = evolve(psi0, model, vacuum ? &*vacuum : nullptr, cfg, [&](const TimeRecord& r) {
    writer.write(r);
  });
  manifest.step_iteration_histogram = series.iteration_histogram;
  std::cout << "records " << writer.rows() << '\n';
}

void cmd_observables(const Settings& s, RunManifest& manifest) {
  const Model model = make_model(s);
  manifest.model = model_to_json(model);
  manifest.config = {{"source", s.state_file.empty() ? s.source : "file"}};

  std::optional<VacuumResult> vacuum;
  StateVector psi(1);
  if (!s.state_file.empty()) {
    psi = load_state(s.state_file);
    if (psi.n_qubits() != model.n_qubits()) throw ValidationError("state file does not match the model");
  } else if (s.source == "psi1") {
    psi = prepare_initial_state(InitialKind::psi1, model, nullptr);
  } else if (s.source == "vacuum" || s.source == "psi2") {
    vacuum = s.vacuum_file.empty() ? solve_and_store_vacuum(model, s, s.out, manifest)
                                   : load_vacuum(s.vacuum_file, model);
    psi = s.source == "vacuum" ? vacuum->state : prepare_initial_state(InitialKind::psi2, model, &*vacuum);
  } else {
    throw ValidationError("unknown state source '" + s.source + "' (vacuum, psi1, psi2)");
  }

  const bool all = !s.sre && !s.entropy && !s.profiles;
  nlohmann::json report = {{"model", model_to_json(model)}, {"source", manifest.config["source"]}};
  if (all || s.profiles) {
    report["electric_profile"] = electric_energy_profile(psi, model).energies;
    const TadpoleField u = tadpole_profile(psi, model);
    report["tadpole_profile"] = std::vector<double>(u.values().begin(), u.values().end());
    report["tadpole_exponent"] = u.exponent();
  }
  if (all || s.entropy) {
    nlohmann::json cuts = nlohmann::json::array();
    nlohmann::json values = nlohmann::json::array();
    std::vector<int> cut;
    for (int k = 0; k + 1 < model.n_qubits(); ++k) {
      cut.push_back(k);
      cuts.push_back(cut);
      values.push_back(bipartite_entropy(psi, cut));
    }
    report["bipartite_entropy"] = {{"cuts", cuts}, {"values", values}, {"unit", "bits"}};
  }
  if (all || s.sre) {
    const StabilizerRenyi m = stabilizer_renyi(psi);
    report["stabilizer_renyi"] = {{"M1", m.m1},
                                  {"M2", m.m2},
                                  {"M1_per_L", m.m1_density},
                                  {"M2_per_L", m.m2_density},
                                  {"xi_sum", m.xi_sum},
                                  {"log_base", 2}};
  }
  const fs::path path = fs::path(s.out) / "observables.json";
  write_json(path, report);
  manifest.outputs.push_back(path.string());
  std::cout << report.dump(2) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  Settings s;
  CLI::App app{"Tadpole-improved SU(2) lattice gauge theory simulator"};
  app.set_config("--config", "", "Key-value config file; command-line flags override it");
  app.require_subcommand(1);
  app.fallthrough();

  app.add_option("--model", s.model, "chain or honeycomb")->capture_default_str();
  app.add_option("--L", s.L, "Chain length (plaquettes)")->capture_default_str();
  app.add_option("--Lx", s.Lx, "Honeycomb cells along x")->capture_default_str();
  app.add_option("--Ly", s.Ly, "Honeycomb cells along y")->capture_default_str();
  app.add_option("--g", s.g, "Coupling")->capture_default_str();
  app.add_option("--out", s.out, "Output directory")->capture_default_str();
  app.add_option("--tol", s.tol, "Vacuum self-consistency tolerance")->capture_default_str();
  app.add_option("--max-iter", s.max_iter, "Vacuum iteration budget")->capture_default_str();
  app.add_option("--damping", s.damping, "Tadpole mixing parameter in (0, 1]")->capture_default_str();
  app.add_option("--dt", s.dt, "Time step")->capture_default_str();
  app.add_option("--tmax", s.tmax, "Total evolution time")->capture_default_str();
  app.add_option("--mode", s.mode, "dynamical, unimproved or vacuum")->capture_default_str();
  app.add_option("--initial", s.initial, "psi1 or psi2")->capture_default_str();
  app.add_option("--sc-tol", s.sc_tol, "Per-step self-consistency tolerance")->capture_default_str();
  app.add_option("--sc-max-iter", s.sc_max_iter, "Per-step iteration budget")->capture_default_str();
  app.add_option("--record-every", s.record_every, "Record stride in steps")->capture_default_str();
  app.add_option("--krylov-dim", s.krylov_dim, "Krylov subspace limit")->capture_default_str();
  app.add_option("--propagator-tol", s.propagator_tol, "Krylov error bound")->capture_default_str();
  app.add_option("--vacuum", s.vacuum_file, "Cached vacuum.json to reuse");
  app.add_option("--state", s.state_file, "State dump to analyse");
  app.add_option("--source", s.source, "State for observables: vacuum, psi1 or psi2")->capture_default_str();
  app.add_flag("--sre", s.sre, "Stabilizer Renyi entropies");
  app.add_flag("--entropy", s.entropy, "Bipartite entanglement entropies");
  app.add_flag("--profiles", s.profiles, "Electric-energy and tadpole profiles");

  auto* gs = app.add_subcommand("ground-state", "Self-consistent interacting vacuum");
  auto* ev = app.add_subcommand("evolve", "Time evolution to a CSV time series");
  auto* ob = app.add_subcommand("observables", "Static observables report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  RunManifest manifest;
  manifest.command = gs->parsed() ? "ground-state" : ev->parsed() ? "evolve" : "observables";
  const auto started = std::chrono::steady_clock::now();
  int code = 0;
  try {
    fs::create_directories(s.out);
    if (gs->parsed()) cmd_ground_state(s, manifest);
    if (ev->parsed()) cmd_evolve(s, manifest);
    if (ob->parsed()) cmd_observables(s, manifest);
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    manifest.status = "error";
    manifest.error = e.what();
    code = 2;
  } catch (const ConvergenceError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    if (!e.residuals().empty()) std::cerr << "  last residual " << e.residuals().back() << '\n';
    manifest.status = "error";
    manifest.error = e.what();
    code = 3;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    manifest.status = "error";
    manifest.error = e.what();
    code = 3;
  }
  manifest.wall_clock_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  std::error_code ec;
  if (fs::is_directory(s.out, ec)) write_json(fs::path(s.out) / "manifest.json", manifest_to_json(manifest));
  return code;
}

#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tadpole/evolution.hpp"
#include "tadpole/ground_state.hpp"
#include "tadpole/model.hpp"

namespace tadpole {

inline constexpr const char* kCodeVersion = "0.1.0";
inline constexpr int kManifestMajor = 1;
inline constexpr const char* kManifestSchema = "1.0";

/// Shortest round-trippable text for a double (17 significant digits).
std::string format_double(double v);

// ---- time series CSV ------------------------------------------------------

/// Header: t,iters,residual,energy_total,norm,E_0..E_{P-1},u_0..u_{P-1}.
/// `residual` is empty when no self-consistency iteration ran.
std::string csv_header(int plaquettes);
std::string csv_row(const TimeRecord& rec);

/// Writes rows as they arrive and flushes each one, so a failing run leaves
/// every completed record on disk.
class TimeSeriesCsvWriter {
 public:
  TimeSeriesCsvWriter(const std::filesystem::path& path, int plaquettes);
  void write(const TimeRecord& rec);
  std::size_t rows() const { return rows_; }

 private:
  std::ofstream out_;
  std::size_t rows_ = 0;
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(const std::string& name) const;
  double value(std::size_t row, const std::string& name) const;
};

CsvTable read_csv(const std::filesystem::path& path);

// ---- state dumps ----------------------------------------------------------

/// Little-endian binary: "TPSV", u32 version (1), u32 n_qubits, u32 reserved,
/// u64 amplitude count, then (re, im) float64 pairs.
void save_state(const std::filesystem::path& path, const StateVector& psi);
StateVector load_state(const std::filesystem::path& path);

// ---- model / manifest / vacuum files --------------------------------------

nlohmann::json model_to_json(const Model& model);
Model model_from_json(const nlohmann::json& j);

struct RunManifest {
  std::string schema_version = kManifestSchema;
  std::string command;
  std::string code_version = kCodeVersion;
  nlohmann::json model = nlohmann::json::object();
  nlohmann::json config = nlohmann::json::object();
  std::string initial;
  std::string mode;
  double wall_clock_seconds = 0.0;
  std::optional<int> vacuum_iterations;
  std::map<int, int> step_iteration_histogram;
  std::vector<std::string> outputs;
  std::string status = "ok";
  std::string error;

  friend bool operator==(const RunManifest&, const RunManifest&) = default;
};

nlohmann::json manifest_to_json(const RunManifest& m);
/// Throws ValidationError for a schema whose major version is not kManifestMajor.
RunManifest manifest_from_json(const nlohmann::json& j);

void write_json(const std::filesystem::path& path, const nlohmann::json& j);
nlohmann::json read_json(const std::filesystem::path& path);

/// Vacuum summary: energy, energy density, the tadpole field (powered and as
/// u), convergence data, and the state dump path relative to the file.
nlohmann::json vacuum_to_json(const Model& model, const VacuumResult& vac, const std::string& state_file);

/// Loads a vacuum file and its state dump; the model must match.
VacuumResult load_vacuum(const std::filesystem::path& path, const Model& model);

}  // namespace tadpole

#include "tadpole/io.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <sstream>

#include <fmt/format.h>

#include "tadpole/errors.hpp"

namespace tadpole {

static_assert(std::endian::native == std::endian::little, "state dumps assume a little-endian host");

std::string format_double(double v) { return fmt::format("{:.17g}", v); }

std::string csv_header(int plaquettes) {
  std::string h = "t,iters,residual,energy_total,norm";
  for (int p = 0; p < plaquettes; ++p) h += fmt::format(",E_{}", p);
  for (int p = 0; p < plaquettes; ++p) h += fmt::format(",u_{}", p);
  return h;
}

std::string csv_row(const TimeRecord& rec) {
  std::string row = format_double(rec.t);
  row += fmt::format(",{},", rec.iterations);
  if (rec.residual) row += format_double(*rec.residual);
  row += "," + format_double(rec.energy_total) + "," + format_double(rec.norm);
  for (double e : rec.energies) row += "," + format_double(e);
  for (double u : rec.tadpole.values()) row += "," + format_double(u);
  return row;
}

TimeSeriesCsvWriter::TimeSeriesCsvWriter(const std::filesystem::path& path, int plaquettes)
    : out_(path) {
  if (!out_) throw ValidationError("cannot open " + path.string() + " for writing");
  out_ << csv_header(plaquettes) << '\n' << std::flush;
}

void TimeSeriesCsvWriter::write(const TimeRecord& rec) {
  out_ << csv_row(rec) << '\n' << std::flush;
  ++rows_;
}

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (header[c] == name) return c;
  }
  throw ValidationError("CSV has no column '" + name + "'");
}

double CsvTable::value(std::size_t row, const std::string& name) const {
  return std::stod(rows.at(row).at(column(name)));
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path.string());
  auto split = [](const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
  };
  CsvTable t;
  std::string line;
  if (std::getline(in, line)) t.header = split(line);
  while (std::getline(in, line)) {
    if (!line.empty()) t.rows.push_back(split(line));
  }
  return t;
}

namespace {

constexpr std::array<char, 4> kStateMagic{'T', 'P', 'S', 'V'};
constexpr std::uint32_t kStateVersion = 1;

template <class T>
void put(std::ofstream& out, const T& v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::ifstream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!in) throw ValidationError("truncated state dump");
  return v;
}

}  // namespace

void save_state(const std::filesystem::path& path, const StateVector& psi) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot open " + path.string() + " for writing");
  out.write(kStateMagic.data(), kStateMagic.size());
  put<std::uint32_t>(out, kStateVersion);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(psi.n_qubits()));
  put<std::uint32_t>(out, 0);
  put<std::uint64_t>(out, psi.dim());
  static_assert(sizeof(cplx) == 2 * sizeof(double));
  out.write(reinterpret_cast<const char*>(psi.amplitudes().data()),
            static_cast<std::streamsize>(psi.dim() * sizeof(cplx)));
  if (!out) throw ValidationError("failed writing " + path.string());
}

StateVector load_state(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + path.string());
  std::array<char, 4> magic{};
  in.read(magic.data(), magic.size());
  if (!in || magic != kStateMagic) throw ValidationError(path.string() + " is not a state dump");
  const auto version = get<std::uint32_t>(in);
  if (version != kStateVersion) throw ValidationError(fmt::format("unsupported state dump version {}", version));
  const auto n = static_cast<int>(get<std::uint32_t>(in));
  get<std::uint32_t>(in);
  const auto count = get<std::uint64_t>(in);
  if (n < 1 || n > kMaxStateQubits || count != (std::uint64_t{1} << n)) {
    throw ValidationError("state dump header is inconsistent");
  }
  std::vector<cplx> amps(count);
  in.read(reinterpret_cast<char*>(amps.data()), static_cast<std::streamsize>(count * sizeof(cplx)));
  if (!in) throw ValidationError("truncated state dump");
  return StateVector(n, std::move(amps));
}

nlohmann::json model_to_json(const Model& model) {
  if (const auto* c = model.chain()) return {{"type", "chain"}, {"L", c->L}, {"g", c->g}};
  const auto* h = model.honeycomb();
  return {{"type", "honeycomb"}, {"Lx", h->Lx}, {"Ly", h->Ly}, {"g", h->g}};
}

Model model_from_json(const nlohmann::json& j) {
  const std::string type = j.at("type");
  if (type == "chain") return Model(ChainSpec{j.at("L").get<int>(), j.at("g").get<double>()});
  if (type == "honeycomb") {
    return Model(HoneycombSpec{j.at("Lx").get<int>(), j.at("Ly").get<int>(), j.at("g").get<double>()});
  }
  throw ValidationError("unknown model type '" + type + "'");
}

nlohmann::json manifest_to_json(const RunManifest& m) {
  nlohmann::json hist = nlohmann::json::object();
  for (const auto& [iters, count] : m.step_iteration_histogram) hist[std::to_string(iters)] = count;
  nlohmann::json j = {
      {"schema_version", m.schema_version},
      {"command", m.command},
      {"code_version", m.code_version},
      {"model", m.model},
      {"config", m.config},
      {"initial", m.initial},
      {"mode", m.mode},
      {"wall_clock_seconds", m.wall_clock_seconds},
      {"vacuum_iterations", m.vacuum_iterations ? nlohmann::json(*m.vacuum_iterations) : nlohmann::json()},
      {"step_iteration_histogram", hist},
      {"outputs", m.outputs},
      {"status", m.status},
      {"error", m.error},
  };
  return j;
}

RunManifest manifest_from_json(const nlohmann::json& j) {
  RunManifest m;
  m.schema_version = j.at("schema_version").get<std::string>();
  const int major = std::stoi(m.schema_version.substr(0, m.schema_version.find('.')));
  if (major != kManifestMajor) {
    throw ValidationError(fmt::format("manifest schema {} unsupported (expected major {})", m.schema_version,
                                      kManifestMajor));
  }
  m.command = j.at("command");
  m.code_version = j.at("code_version");
  m.model = j.at("model");
  m.config = j.at("config");
  m.initial = j.at("initial");
  m.mode = j.at("mode");
  m.wall_clock_seconds = j.at("wall_clock_seconds");
  if (!j.at("vacuum_iterations").is_null()) m.vacuum_iterations = j.at("vacuum_iterations").get<int>();
  for (const auto& [k, v] : j.at("step_iteration_histogram").items()) {
    m.step_iteration_histogram[std::stoi(k)] = v.get<int>();
  }
  m.outputs = j.at("outputs").get<std::vector<std::string>>();
  m.status = j.at("status");
  m.error = j.at("error");
  return m;
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open " + path.string() + " for writing");
  out << j.dump(2) << '\n';
}

nlohmann::json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

nlohmann::json vacuum_to_json(const Model& model, const VacuumResult& vac, const std::string& state_file) {
  std::vector<double> u;
  for (std::size_t p = 0; p < vac.tadpole.size(); ++p) u.push_back(vac.tadpole.link_factor(p));
  const std::string key = vac.tadpole.kind() == ModelKind::chain ? "u4" : "u6";
  nlohmann::json j = {
      {"model", model_to_json(model)},
      {"energy", vac.total_energy},
      {"energy_density", vac.energy_density},
      {key, std::vector<double>(vac.tadpole.values().begin(), vac.tadpole.values().end())},
      {"u", u},
      {"iterations", vac.iterations},
      {"final_residual", vac.final_residual},
      {"residual_history", vac.residual_history},
      {"gap_estimate", std::isnan(vac.gap_estimate) ? nlohmann::json() : nlohmann::json(vac.gap_estimate)},
      {"near_degenerate", vac.near_degenerate},
      {"state_file", state_file},
  };
  return j;
}

VacuumResult load_vacuum(const std::filesystem::path& path, const Model& model) {
  const nlohmann::json j = read_json(path);
  if (j.at("model") != model_to_json(model)) {
    throw ValidationError(path.string() + " was computed for a different model");
  }
  VacuumResult v;
  const std::string key = model.kind() == ModelKind::chain ? "u4" : "u6";
  v.tadpole = TadpoleField(model.kind(), j.at(key).get<std::vector<double>>());
  v.total_energy = j.at("energy");
  v.energy_density = j.at("energy_density");
  v.iterations = j.at("iterations");
  v.final_residual = j.at("final_residual");
  v.residual_history = j.at("residual_history").get<std::vector<double>>();
  v.gap_estimate = j.at("gap_estimate").is_null() ? std::nan("") : j.at("gap_estimate").get<double>();
  v.near_degenerate = j.at("near_degenerate");
  std::filesystem::path state = j.at("state_file").get<std::string>();
  if (state.is_relative()) state = path.parent_path() / state;
  v.state = load_state(state);
  if (v.state.n_qubits() != model.n_qubits()) throw ValidationError("vacuum state does not match the model");
  return v;
}

}  // namespace tadpole

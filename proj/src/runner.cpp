#include "cavityed/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <ostream>
#include <charconv>

#include <unistd.h>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "cavityed/error.hpp"

namespace cavityed {

namespace {

using nlohmann::json;

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

std::string quoted(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c == '\n' ? ' ' : c);
  return out + "\"";
}

class Csv {
 public:
  explicit Csv(std::vector<std::string> columns) : columns_(std::move(columns)) {}
  Csv& operator<<(double v) { return cell(num(v)); }
  Csv& operator<<(std::size_t v) { return cell(std::to_string(v)); }
  Csv& operator<<(bool v) { return cell(v ? "true" : "false"); }
  Csv& operator<<(const std::string& v) { return cell(quoted(v)); }
  void end_row() {
    if (row_.size() != columns_.size()) throw EvaluationError("csv row width mismatch");
    rows_.push_back(std::move(row_));
    row_.clear();
  }
  const std::vector<std::string>& columns() const { return columns_; }
  std::string text() const {
    std::string out;
    auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) out += (i ? "," : "") + cells[i];
      out += "\n";
    };
    line(columns_);
    for (const auto& r : rows_) line(r);
    return out;
  }

 private:
  Csv& cell(std::string s) {
    row_.push_back(std::move(s));
    return *this;
  }
  std::vector<std::string> columns_;
  std::vector<std::string> row_;
  std::vector<std::vector<std::string>> rows_;
};

json nan_safe(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json grid_info(const ModelSpec& m) {
  json g = json::object();
  auto one = [](const Grid1D& grid) {
    return json{{"points", grid.size()}, {"spacing_bohr", grid.spacing()}, {"origin_bohr", grid.origin()},
                {"extent_bohr", grid.extent()}};
  };
  if (m.electron_grid) g["electron"] = one(*m.electron_grid);
  if (m.nuclear_grid) g["nucleus"] = one(*m.nuclear_grid);
  return g;
}

std::size_t dimension_of(const ModelSpec& m) {
  std::size_t d = m.fock.n_fock;
  if (m.electron_grid) d *= m.electron_grid->size();
  if (m.nuclear_grid) d *= m.nuclear_grid->size();
  return d;
}

double max_of(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, x);
  return v.empty() ? std::numeric_limits<double>::quiet_NaN() : m;
}

void progress_line(std::ostream* out, const std::string& s) {
  if (out) *out << s << std::endl;
}

RunOutput run_spectrum(const RunConfig& c, std::ostream* progress, json& runs) {
  const ModelSpec spec = c.model.instantiate();
  const ModelSolution sol = solve_model(spec, c.solver);
  Csv csv({"index", "energy_hartree", "residual_hartree", "converged", "dipole_R_bohr", "expect_p_au", "D_perp_au",
           "P_perp_au", "E_perp_au", "N_physical", "N_naive"});
  for (std::size_t i = 0; i < sol.eigenvalues.size(); ++i) {
    const ObservableSet& o = sol.observables[i];
    const double nan = std::numeric_limits<double>::quiet_NaN();
    csv << i << sol.eigenvalues[i] << sol.residual_norms[i] << static_cast<bool>(sol.converged[i]) << o.dipole_R
        << o.expect_p.value_or(nan) << (o.fields ? o.fields->D_perp : nan) << (o.fields ? o.fields->P_perp : nan)
        << (o.fields ? o.fields->E_perp : nan) << (o.photons ? o.photons->N_physical : nan)
        << (o.photons ? o.photons->N_naive : nan);
    csv.end_row();
  }
  progress_line(progress, "spectrum: E0 = " + num(sol.eigenvalues.front()) + " hartree");
  runs.push_back({{"label", "spectrum"},
                  {"dimension", dimension_of(spec)},
                  {"grids", grid_info(spec)},
                  {"residuals", sol.residual_norms},
                  {"converged", sol.all_converged()},
                  {"iterations", sol.iterations},
                  {"restarts", sol.restarts},
                  {"warnings", sol.warnings},
                  {"wall_seconds", sol.wall_seconds}});
  return {csv.text(), json::object(), sol.all_converged() ? kExitOk : kExitPartial};
}

RunOutput run_box_sweep(const RunConfig& c, std::ostream* progress, json& runs) {
  std::vector<std::string> cols{"box_angstrom", "box_bohr", "n_photon", "n_nucleus", "n_electron", "self_polarization",
                                "diamagnetic"};
  for (std::size_t i = 0; i < c.solver.k; ++i) cols.push_back("E" + std::to_string(i) + "_hartree");
  for (const char* s : {"dipole_R_bohr", "D_perp_au", "E_perp_au", "N_physical", "N_naive", "max_residual_hartree",
                        "converged", "status"})
    cols.push_back(s);
  Csv csv(cols);
  int code = kExitOk;
  for (const SweepRow& row : box_sweep(c.model, c.boxes, c.toggle, c.toggle_values, c.solver)) {
    csv << row.box.in_angstrom() << row.box.in_bohr() << row.n_photon << row.n_nucleus << row.n_electron
        << row.self_polarization << row.diamagnetic;
    for (std::size_t i = 0; i < c.solver.k; ++i)
      csv << (i < row.eigenvalues.size() ? row.eigenvalues[i] : std::numeric_limits<double>::quiet_NaN());
    csv << row.dipole_R << row.D_perp << row.E_perp << row.N_physical << row.N_naive << max_of(row.residuals)
        << row.converged << row.status;
    csv.end_row();
    if (row.status.rfind("error", 0) == 0)
      code = kExitRuntime;
    else if (!row.converged && code == kExitOk)
      code = kExitPartial;
    const bool value = c.toggle == Toggle::SelfPolarization ? row.self_polarization : row.diamagnetic;
    progress_line(progress, "box_sweep: box " + num(row.box.in_angstrom()) + " A, " + std::string(to_string(c.toggle)) +
                                " = " + (value ? "true" : "false") + ": " + row.status);
    runs.push_back({{"label", "box " + num(row.box.in_angstrom()) + " angstrom"},
                    {"self_polarization", row.self_polarization},
                    {"diamagnetic", row.diamagnetic},
                    {"points", {{"photon", row.n_photon}, {"nucleus", row.n_nucleus}, {"electron", row.n_electron}}},
                    {"residuals", row.residuals},
                    {"converged", row.converged},
                    {"iterations", row.iterations},
                    {"status", row.status},
                    {"warnings", row.warnings},
                    {"wall_seconds", row.wall_seconds}});
  }
  return {csv.text(), json::object(), code};
}

RunOutput run_gauge_compare(const RunConfig& c, std::ostream* progress, json& runs) {
  const GaugeCompareResult r = gauge_compare(c.model, c.solver);
  Csv csv({"variant", "index", "E_length_hartree", "E_coulomb_hartree", "delta_hartree", "abs_delta_ev",
           "residual_length_hartree", "residual_coulomb_hartree", "converged"});
  bool all = true;
  for (const auto& row : r.rows) {
    csv << row.variant << row.index << row.E_length << row.E_coulomb << row.delta_hartree << row.abs_delta_ev
        << row.residual_length << row.residual_coulomb << row.converged;
    csv.end_row();
    all = all && row.converged;
    runs.push_back({{"label", row.variant + " #" + std::to_string(row.index)},
                    {"residuals", {row.residual_length, row.residual_coulomb}},
                    {"converged", row.converged},
                    {"warnings", row.warnings}});
  }
  progress_line(progress, "gauge_compare: " + std::to_string(r.rows.size()) + " rows");
  RunOutput out{csv.text(), json::object(), all ? kExitOk : kExitPartial};
  out.manifest["experiment_wall_seconds"] = r.wall_seconds;
  out.manifest["grids"] = grid_info(c.model.instantiate());
  return out;
}

RunOutput run_translation(const RunConfig& c, std::ostream* progress, json& runs) {
  const auto rows = translation_test(c.model, c.shifts_bohr, c.toggle_values, c.solver);
  Csv csv({"self_polarization", "mu_bohr", "max_density_diff_per_bohr", "E0_hartree", "dipole_R_bohr",
           "dipole_R_back_bohr", "E_perp_au", "N_physical", "N_naive", "residual_hartree", "converged"});
  bool all = true;
  for (const auto& row : rows) {
    csv << row.self_polarization << row.mu_bohr << row.max_density_diff << row.eigenvalues.front() << row.dipole_R
        << row.dipole_R_back << row.E_perp << row.N_physical << row.N_naive << row.residual << row.converged;
    csv.end_row();
    all = all && row.converged;
    progress_line(progress, "translation_test: SP " + std::string(row.self_polarization ? "on" : "off") + ", mu " +
                                num(row.mu_bohr) + ": max diff " + num(row.max_density_diff));
    runs.push_back({{"label", "mu " + num(row.mu_bohr) + " bohr"},
                    {"self_polarization", row.self_polarization},
                    {"eigenvalues", row.eigenvalues},
                    {"residuals", {row.residual}},
                    {"converged", row.converged},
                    {"warnings", row.warnings},
                    {"wall_seconds", row.wall_seconds}});
  }
  RunOutput out{csv.text(), json::object(), all ? kExitOk : kExitPartial};
  out.manifest["grids"] = grid_info(c.model.instantiate());
  return out;
}

RunOutput run_resonance(const RunConfig& c, std::ostream* progress, json& runs) {
  const ResonanceResult r = find_resonance(c.model, c.solver);
  Csv csv({"epsilon_1_hartree", "epsilon_2_hartree", "omega_hartree", "omega_ev", "extension_criterion_1",
           "extension_criterion_2", "max_residual_hartree", "converged"});
  csv << r.epsilon_1 << r.epsilon_2 << r.omega << hartree_to_ev(r.omega) << r.extension_criterion_1
      << r.extension_criterion_2 << max_of(r.residuals) << r.converged;
  csv.end_row();
  progress_line(progress, "find_resonance: omega = " + num(r.omega) + " hartree");
  runs.push_back({{"label", "bare matter"},
                  {"matter_eigenvalues", r.matter_eigenvalues},
                  {"residuals", r.residuals},
                  {"converged", r.converged},
                  {"wall_seconds", r.wall_seconds}});
  RunOutput out{csv.text(), json::object(), r.converged ? kExitOk : kExitPartial};
  out.manifest["resonance"] = {{"omega_hartree", r.omega},
                               {"extension_criterion_1", nan_safe(r.extension_criterion_1)},
                               {"extension_criterion_2", nan_safe(r.extension_criterion_2)}};
  out.manifest["grids"] = grid_info(c.model.instantiate());
  return out;
}

}  // namespace

int threads_from_env() {
  const char* v = std::getenv("CAVITYED_THREADS");
  if (!v || !*v) return 0;
  int n = 0;
  const char* end = v + std::char_traits<char>::length(v);
  auto [p, ec] = std::from_chars(v, end, n);
  if (ec != std::errc() || p != end || n < 1)
    throw ConfigurationError("CAVITYED_THREADS must be a positive integer, got '" + std::string(v) + "'");
#ifdef _OPENMP
  omp_set_num_threads(n);
#endif
  return n;
}

int active_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

RunOutput execute(const RunConfig& config, std::ostream* progress) {
  const auto start = std::chrono::steady_clock::now();
  json runs = json::array();
  RunOutput out;
  switch (config.experiment) {
    case ExperimentKind::Spectrum: out = run_spectrum(config, progress, runs); break;
    case ExperimentKind::BoxSweep: out = run_box_sweep(config, progress, runs); break;
    case ExperimentKind::GaugeCompare: out = run_gauge_compare(config, progress, runs); break;
    case ExperimentKind::TranslationTest: out = run_translation(config, progress, runs); break;
    case ExperimentKind::FindResonance: out = run_resonance(config, progress, runs); break;
  }

  json cfg = json::object();
  for (const auto& [s, k, v] : resolved_entries(config)) cfg[s][k] = v;
  const CavityCoupling& cc = config.model.coupling;
  json m = {
      {"schema_version", kManifestSchemaVersion},
      {"software", {{"name", "cavity_ed"}, {"version", CAVITYED_VERSION}}},
      {"config_grammar_version", kConfigGrammarVersion},
      {"config", cfg},
      {"config_text", serialize_config(config)},
      {"derived",
       {{"omega_hartree", cc.omega()},
        {"lambda_au", cc.lambda()},
        {"g_over_omega", cc.g_over_omega()},
        {"bohr_per_angstrom", kBohrPerAngstrom},
        {"ev_per_hartree", kEvPerHartree}}},
      {"csv_schema_version", kCsvSchemaVersion},
      {"threads", active_threads()},
      {"runs", runs},
  };
  for (auto& [k, v] : out.manifest.items()) m[k] = v;
  m["wall_seconds_total"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  m["exit_code"] = out.exit_code;
  out.manifest = std::move(m);
  return out;
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  namespace fs = std::filesystem;
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp-" + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    f << content;
    f.flush();
    if (!f) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw std::runtime_error("write failed for " + tmp.string());
    }
  }
  fs::rename(tmp, path);
}

int run(const RunConfig& config, const std::filesystem::path& out_dir, std::ostream& log) {
  RunOutput out;
  try {
    out = execute(config, &log);
  } catch (const ConfigurationError& e) {
    log << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ParameterError& e) {
    log << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    log << "runtime error: " << e.what() << "\n";
    return kExitRuntime;
  }
  const auto resolve = [&](const std::string& p) {
    const std::filesystem::path path(p);
    return path.is_absolute() ? path : out_dir / path;
  };
  try {
    const auto csv_path = resolve(config.csv_path);
    const auto manifest_path = resolve(config.manifest_path);
    out.manifest["outputs"] = {{"csv", csv_path.string()}, {"manifest", manifest_path.string()}};
    write_atomic(csv_path, out.csv);
    write_atomic(manifest_path, out.manifest.dump(2) + "\n");
    log << "wrote " << csv_path.string() << " and " << manifest_path.string() << "\n";
  } catch (const std::exception& e) {
    log << "runtime error: " << e.what() << "\n";
    return kExitRuntime;
  }
  if (out.exit_code == kExitPartial) log << "warning: not every eigenpair converged (see manifest residuals)\n";
  return out.exit_code;
}

}  // namespace cavityed

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sys/wait.h>
#include <unistd.h>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>
#include <string>

#include "cavityed/config.hpp"
#include "cavityed/presets.hpp"
#include "cavityed/runner.hpp"

using namespace cavityed;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

fs::path scratch_dir(const std::string& tag) {
  const fs::path d = fs::temp_directory_path() / ("cavityed_test_" + tag + "_" + std::to_string(::getpid()));
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

const char* kSmall = R"([experiment]
kind = spectrum
[model]
kind = shin_metiu
[grid]
electron_box = 20 angstrom
electron_spacing = 0.8 bohr
nuclear_box = 5.93 angstrom
nuclear_spacing = 0.16 bohr
[cavity]
omega = 0.00231
g_over_omega = 0.40748
n_fock = 6
[solver]
k = 2
tol = 1e-10
)";

}  // namespace

TEST_CASE("pinned preset: exit 0, deterministic CSV, 17 significant digits") {
  const RunConfig c = parse_config(find_preset("pinned_dipole")->text);
  const RunOutput a = execute(c);
  const RunOutput b = execute(c);
  CHECK(a.exit_code == kExitOk);
  CHECK(a.csv == b.csv);

  std::istringstream in(a.csv);
  std::string header, row;
  std::getline(in, header);
  CHECK(header ==
        "index,energy_hartree,residual_hartree,converged,dipole_R_bohr,expect_p_au,D_perp_au,P_perp_au,E_perp_au,"
        "N_physical,N_naive");
  const std::regex sci(R"(-?\d\.\d{16}e[+-]\d{2,3})");
  int rows = 0;
  while (std::getline(in, row)) {
    const auto cells = split(row);
    REQUIRE(cells.size() == 11);
    CHECK(cells[0] == std::to_string(rows));
    CHECK(std::regex_match(cells[1], sci));
    CHECK(cells[3] == "true");
    // exact round trip of the printed value
    // with self-polarization the displaced ladder is n * omega exactly
    CHECK(std::abs(std::strtod(cells[1].c_str(), nullptr) - 0.5 * rows) < 1e-9);
    ++rows;
  }
  CHECK(rows == 4);

  CHECK(a.manifest["exit_code"] == 0);
  CHECK(a.manifest["schema_version"] == kManifestSchemaVersion);
  CHECK(a.manifest["config"]["cavity"]["lambda"] == "0.1");
  CHECK(a.manifest["derived"]["lambda_au"].get<double>() == 0.1);
  CHECK(parse_config(a.manifest["config_text"].get<std::string>()) == c);
}

TEST_CASE("run writes both files atomically and relative to out_dir") {
  const fs::path dir = scratch_dir("run");
  RunConfig c = parse_config(find_preset("pinned_dipole")->text);
  std::ostringstream log;
  CHECK(run(c, dir, log) == kExitOk);
  CHECK(fs::exists(dir / "pinned_dipole.csv"));
  CHECK(fs::exists(dir / "pinned_dipole.json"));
  for (const auto& e : fs::directory_iterator(dir)) CHECK(e.path().string().find(".tmp-") == std::string::npos);
  const auto manifest = nlohmann::json::parse(slurp(dir / "pinned_dipole.json"));
  CHECK(manifest["outputs"]["csv"] == (dir / "pinned_dipole.csv").string());
  const std::string first = slurp(dir / "pinned_dipole.csv");
  CHECK(run(c, dir, log) == kExitOk);
  CHECK(slurp(dir / "pinned_dipole.csv") == first);
  fs::remove_all(dir);
}

TEST_CASE("write_atomic replaces content and leaves no temp file") {
  const fs::path dir = scratch_dir("atomic");
  write_atomic(dir / "sub" / "x.txt", "one");
  write_atomic(dir / "sub" / "x.txt", "two");
  CHECK(slurp(dir / "sub" / "x.txt") == "two");
  int n = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(dir / "sub")) ++n;
  CHECK(n == 1);
  std::ofstream(dir / "file") << "x";
  CHECK_THROWS(write_atomic(dir / "file" / "y.txt", "z"));
  fs::remove_all(dir);
}

TEST_CASE("observable columns on a small Shin-Metiu run") {
  const RunOutput out = execute(parse_config(kSmall));
  CHECK(out.exit_code == kExitOk);
  std::istringstream in(out.csv);
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  const auto cells = split(row);
  REQUIRE(cells.size() == 11);
  const double n_phys = std::strtod(cells[9].c_str(), nullptr);
  const double n_naive = std::strtod(cells[10].c_str(), nullptr);
  CHECK(n_naive > n_phys);
  CHECK(n_phys >= 0.0);
}

TEST_CASE("unconverged solve gives the partial exit code") {
  RunConfig c = parse_config(kSmall);
  c.solver.max_iter = 3;
  c.solver.tol = 1e-14;
  const RunOutput out = execute(c);
  CHECK(out.exit_code == kExitPartial);
  CHECK(out.csv.find(",false,") != std::string::npos);
}

TEST_CASE("translation CSV columns") {
  RunConfig c = parse_config(kSmall);
  c.experiment = ExperimentKind::TranslationTest;
  c.model.shin_metiu.Z = 1.05;
  c.shifts_bohr = {1.0};
  c.toggle_values = {true};
  c.solver.k = 1;
  const RunOutput out = execute(c);
  CHECK(out.csv.rfind(
            "self_polarization,mu_bohr,max_density_diff_per_bohr,E0_hartree,dipole_R_bohr,dipole_R_back_bohr,E_perp_au,"
            "N_physical,N_naive,residual_hartree,converged\n",
            0) == 0);
  CHECK(std::count(out.csv.begin(), out.csv.end(), '\n') == 2);
}

TEST_CASE("threads from the environment") {
  ::setenv("CAVITYED_THREADS", "1", 1);
  CHECK(threads_from_env() == 1);
  ::setenv("CAVITYED_THREADS", "two", 1);
  CHECK_THROWS(threads_from_env());
  ::setenv("CAVITYED_THREADS", "0", 1);
  CHECK_THROWS(threads_from_env());
  ::unsetenv("CAVITYED_THREADS");
  CHECK(threads_from_env() == 0);
}

#ifdef CAVITY_ED_BINARY
TEST_CASE("command-line exit codes") {
  const fs::path dir = scratch_dir("cli");
  const std::string exe = CAVITY_ED_BINARY;
  auto sh = [](const std::string& cmd) {
    const int status = std::system((cmd + " >/dev/null 2>&1").c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  };
  CHECK(sh(exe + " presets list") == 0);
  CHECK(sh(exe + " presets show pinned_dipole") == 0);
  CHECK(sh(exe + " presets show nothing") == 3);
  CHECK(sh(exe + " run --preset pinned_dipole -q -o " + dir.string()) == 0);
  CHECK(fs::exists(dir / "pinned_dipole.json"));

  std::ofstream(dir / "bad.cfg") << "[experiment]\nkind = spectrum\n[model]\nkind = pinned_dipole\n";
  CHECK(sh(exe + " validate " + (dir / "bad.cfg").string()) == 3);
  CHECK(sh(exe + " run " + (dir / "missing.cfg").string()) == 3);
  CHECK(sh(exe + " run --bogus-flag") == 3);
  CHECK(sh(exe + " validate --preset rydberg_sweep") == 0);
  CHECK(sh("CAVITYED_THREADS=x " + exe + " run --preset pinned_dipole -q -o " + dir.string()) == 3);

  // output directory below a regular file cannot be created
  std::ofstream(dir / "plain") << "x";
  CHECK(sh(exe + " run --preset pinned_dipole -q -o " + (dir / "plain").string()) == 4);

  // a box too small to hold two bound states is a runtime failure
  std::ofstream(dir / "tiny.cfg") << "[experiment]\nkind = find_resonance\n[model]\nkind = screened_hydrogen\n"
                                     "[grid]\nelectron_box = 6 bohr\nelectron_spacing = 0.5 bohr\n"
                                     "[cavity]\nomega = 0.01368\ng_over_omega = 0.006\nn_fock = 2\n";
  CHECK(sh(exe + " run -q " + (dir / "tiny.cfg").string() + " -o " + dir.string()) == 4);
  fs::remove_all(dir);
}
#endif

#include "cavityed/presets.hpp"

namespace cavityed {

namespace {

constexpr std::string_view kRydbergResonance = R"(# Bare screened-hydrogen gap; sets the cavity frequency of the Rydberg runs.
[experiment]
kind = find_resonance

[model]
kind = screened_hydrogen
Z = 0.05

[grid]
electron_box = 200 angstrom
electron_spacing = 0.8 bohr

[cavity]
omega = 0.01368
g_over_omega = 0.006
n_fock = 2

[solver]
k = 4
tol = 1e-10

[output]
csv = rydberg_resonance.csv
manifest = rydberg_resonance.json
)";

constexpr std::string_view kShinMetiuResonance = R"(# Bare Shin-Metiu vibrational gap at full resolution.
[experiment]
kind = find_resonance

[model]
kind = shin_metiu

[grid]
electron_box = 30 angstrom
electron_spacing = 0.4 bohr
nuclear_box = 5.93 angstrom
nuclear_spacing = 0.04 bohr

[cavity]
omega = 0.00231
g_over_omega = 0.40748
n_fock = 2

[solver]
k = 4
tol = 1e-10

[output]
csv = shin_metiu_resonance.csv
manifest = shin_metiu_resonance.json
)";

constexpr std::string_view kShinMetiuSweep = R"(# Ground state vs electronic box, self-polarization on and off, full resolution.
# About 3e6 states at the largest box; expect hours.
[experiment]
kind = box_sweep
boxes = 30, 40, 50, 60, 80, 100 angstrom
toggle = self_polarization
toggle_values = true, false

[model]
kind = shin_metiu

[grid]
electron_spacing = 0.4 bohr
nuclear_box = 5.93 angstrom
nuclear_spacing = 0.04 bohr

[cavity]
omega = 0.00231
g_over_omega = 0.40748
n_fock = 40
gauge = length

[solver]
k = 2
tol = 1e-9

[output]
csv = shin_metiu_sweep.csv
manifest = shin_metiu_sweep.json
)";

constexpr std::string_view kShinMetiuSweepCoarse = R"(# Coarse Shin-Metiu box sweep for quick checks; qualitative only.
[experiment]
kind = box_sweep
boxes = 30, 50, 70, 100 angstrom
toggle = self_polarization
toggle_values = true, false

[model]
kind = shin_metiu

[grid]
electron_spacing = 0.8 bohr
nuclear_box = 5.93 angstrom
nuclear_spacing = 0.08 bohr

[cavity]
omega = 0.00231
g_over_omega = 0.40748
n_fock = 20
gauge = length

[solver]
k = 2
tol = 1e-9

[output]
csv = shin_metiu_sweep_coarse.csv
manifest = shin_metiu_sweep_coarse.json
)";

constexpr std::string_view kRydbergSweep = R"(# Rydberg correlated eigenvalues vs box, length gauge, self-polarization on and off.
[experiment]
kind = box_sweep
boxes = 60, 100, 140, 200, 260 angstrom
toggle = self_polarization
toggle_values = true, false

[model]
kind = screened_hydrogen
Z = 0.05

[grid]
electron_spacing = 0.8 bohr

[cavity]
omega = 0.01368
g_over_omega = 0.006
n_fock = 120
gauge = length

[solver]
k = 4
tol = 1e-9

[output]
csv = rydberg_sweep.csv
manifest = rydberg_sweep.json
)";

constexpr std::string_view kRydbergCoulombSweep = R"(# Same sweep in the Coulomb gauge, diamagnetic term on and off.
[experiment]
kind = box_sweep
boxes = 60, 100, 140, 200, 260 angstrom
toggle = diamagnetic
toggle_values = true, false

[model]
kind = screened_hydrogen
Z = 0.05

[grid]
electron_spacing = 0.8 bohr

[cavity]
omega = 0.01368
g_over_omega = 0.006
n_fock = 120
gauge = coulomb

[solver]
k = 4
tol = 1e-9

[output]
csv = rydberg_coulomb_sweep.csv
manifest = rydberg_coulomb_sweep.json
)";

constexpr std::string_view kRydbergGaugeCompare = R"(# Length vs Coulomb gauge on one grid. The fine spacing keeps the
# finite-difference gauge mismatch below 1e-7 eV.
[experiment]
kind = gauge_compare

[model]
kind = screened_hydrogen
Z = 0.05

[grid]
electron_box = 45 angstrom
electron_spacing = 0.1 bohr

[cavity]
omega = 0.01368
g_over_omega = 0.006
n_fock = 20

[solver]
k = 4
tol = 1e-11

[output]
csv = rydberg_gauge_compare.csv
manifest = rydberg_gauge_compare.json
)";

constexpr std::string_view kRydbergDiamagneticShift = R"(# Ten times smaller frequency at the resonant coupling strength:
# ground to first excited spacing with and without the A^2 term.
[experiment]
kind = box_sweep
boxes = 60 angstrom
toggle = diamagnetic
toggle_values = true, false

[model]
kind = screened_hydrogen
Z = 0.05

[grid]
electron_spacing = 0.8 bohr

[cavity]
omega = 0.00137
lambda = 9.924e-4
n_fock = 40
gauge = coulomb

[solver]
k = 2
tol = 1e-10

[output]
csv = rydberg_diamagnetic_shift.csv
manifest = rydberg_diamagnetic_shift.json
)";

constexpr std::string_view kTranslation = R"(# Charged Shin-Metiu under a shift of the coordinate origin.
[experiment]
kind = translation_test
shifts = 0.5, 1.0, 2.0 bohr
toggle_values = true, false

[model]
kind = shin_metiu
Z = 1.05

[grid]
electron_box = 59.27 angstrom
electron_spacing = 0.4 bohr
nuclear_box = 5.93 angstrom
nuclear_spacing = 0.04 bohr

[cavity]
omega = 0.00231
g_over_omega = 0.40748
n_fock = 40
gauge = length

[solver]
k = 1
tol = 1e-11

[output]
csv = translation.csv
manifest = translation.json
)";

constexpr std::string_view kTranslationCoarse = R"(# Coarse version of the translation test.
[experiment]
kind = translation_test
shifts = 0.5, 1.0, 2.0 bohr
toggle_values = true, false

[model]
kind = shin_metiu
Z = 1.05

[grid]
electron_box = 59.27 angstrom
electron_spacing = 0.8 bohr
nuclear_box = 5.93 angstrom
nuclear_spacing = 0.08 bohr

[cavity]
omega = 0.00231
g_over_omega = 0.40748
n_fock = 20
gauge = length

[solver]
k = 1
tol = 1e-11

[output]
csv = translation_coarse.csv
manifest = translation_coarse.json
)";

constexpr std::string_view kPinnedDipole = R"(# Fixed dipole in a cavity; closed-form spectrum.
[experiment]
kind = spectrum

[model]
kind = pinned_dipole
dipole = 2 bohr

[cavity]
omega = 0.5
lambda = 0.1
n_fock = 40
gauge = length

[solver]
k = 4
tol = 1e-12

[output]
csv = pinned_dipole.csv
manifest = pinned_dipole.json
)";

}  // namespace

const std::vector<Preset>& presets() {
  static const std::vector<Preset> all = {
      {"rydberg_resonance", "screened hydrogen bare gap and extension criteria", kRydbergResonance},
      {"shin_metiu_resonance", "Shin-Metiu bare vibrational gap", kShinMetiuResonance},
      {"shin_metiu_sweep", "Shin-Metiu box sweep, SP on/off, full resolution (slow)", kShinMetiuSweep},
      {"shin_metiu_sweep_coarse", "Shin-Metiu box sweep, SP on/off, coarse grids", kShinMetiuSweepCoarse},
      {"rydberg_sweep", "Rydberg box sweep, length gauge, SP on/off", kRydbergSweep},
      {"rydberg_coulomb_sweep", "Rydberg box sweep, Coulomb gauge, A^2 on/off", kRydbergCoulombSweep},
      {"rydberg_gauge_compare", "length vs Coulomb gauge eigenvalues", kRydbergGaugeCompare},
      {"rydberg_diamagnetic_shift", "A^2 effect on the lowest spacing at omega = 0.00137", kRydbergDiamagneticShift},
      {"translation", "charged Shin-Metiu origin shift, full resolution", kTranslation},
      {"translation_coarse", "charged Shin-Metiu origin shift, coarse grids", kTranslationCoarse},
      {"pinned_dipole", "fixed dipole, analytic spectrum", kPinnedDipole},
  };
  return all;
}

std::optional<Preset> find_preset(std::string_view name) {
  for (const auto& p : presets())
    if (p.name == name) return p;
  return std::nullopt;
}

}  // namespace cavityed

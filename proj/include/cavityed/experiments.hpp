#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cavityed/solve.hpp"
#include "cavityed/units.hpp"

namespace cavityed {

// Everything needed to build a ModelSpec except the electron box, which
// sweeps vary, and the coordinate shift used by the translation test.
struct ModelTemplate {
  ModelKind kind = ModelKind::ScreenedHydrogen;
  ShinMetiuParams shin_metiu;
  ScreenedHydrogenParams hydrogen;
  double pinned_dipole = 0.0;
  double harmonic_omega = 1.0;

  Length electron_box = Length::angstrom(60.0);
  Length electron_spacing = Length::bohr(0.8);
  Length nuclear_box = Length::angstrom(5.93);
  Length nuclear_spacing = Length::bohr(0.08);
  Length center = Length::bohr(0.0);

  FockSpace fock;
  CavityCoupling coupling;
  Gauge gauge = Gauge::Length;
  bool subtract_vacuum = true;

  // Grids are centered on `center`; a shift moves grids and molecular
  // frame together.
  ModelSpec instantiate(std::optional<Length> electron_box_override = std::nullopt, double shift = 0.0) const;

  bool operator==(const ModelTemplate&) const = default;
};

enum class Toggle { SelfPolarization, Diamagnetic };
std::string_view to_string(Toggle t);
Toggle parse_toggle(std::string_view text);

struct SweepRow {
  Length box;
  std::size_t n_photon = 0, n_nucleus = 0, n_electron = 0;
  bool self_polarization = true;
  bool diamagnetic = true;
  std::vector<double> eigenvalues;
  double dipole_R = 0.0;
  // Length-gauge ground-state observables; NaN in the Coulomb gauge.
  double D_perp = 0.0, E_perp = 0.0, N_physical = 0.0, N_naive = 0.0;
  std::vector<double> residuals;
  bool converged = false;
  std::size_t iterations = 0;
  double wall_seconds = 0.0;
  std::string status;  // "ok", "partial" or "error: ..."
  std::vector<std::string> warnings;
};

// One row per (box, toggle value), boxes outermost. Per-row failures are
// recorded in the row and the sweep continues.
std::vector<SweepRow> box_sweep(const ModelTemplate& model, const std::vector<Length>& boxes, Toggle toggle,
                                const std::vector<bool>& values, const LanczosOptions& options);

struct GaugeCompareRow {
  std::string variant;  // both_on, self_polarization_off, diamagnetic_off
  std::size_t index = 0;
  double E_length = 0.0;
  double E_coulomb = 0.0;
  double delta_hartree = 0.0;  // E_length - E_coulomb
  double abs_delta_ev = 0.0;
  double residual_length = 0.0;
  double residual_coulomb = 0.0;
  bool converged = false;
  std::vector<std::string> warnings;
};

struct GaugeCompareResult {
  std::vector<GaugeCompareRow> rows;
  double wall_seconds = 0.0;
};

// Length vs Coulomb gauge on identical grids and truncation; the template's
// gauge and quadratic flags are ignored.
GaugeCompareResult gauge_compare(const ModelTemplate& model, const LanczosOptions& options);

struct TranslationRow {
  bool self_polarization = true;
  double mu_bohr = 0.0;
  double max_density_diff = 0.0;  // max_x |n_mu(x - mu) - n_0(x)|
  std::vector<double> eigenvalues;
  double dipole_R = 0.0;           // in the shifted coordinates
  double dipole_R_back = 0.0;      // dipole_R - (Z - 1) mu
  double E_perp = 0.0;
  double N_physical = 0.0;
  double N_naive = 0.0;
  double residual = 0.0;
  bool converged = false;
  double wall_seconds = 0.0;
  std::vector<std::string> warnings;
};

// Passive translation x -> x + mu, X -> X + mu. Grids move with the
// molecule, so back-translation is the identity on grid indices and only
// the dipole origin changes. Throws ParameterError if |mu| reaches the
// nuclear half-box.
std::vector<TranslationRow> translation_test(const ModelTemplate& model, const std::vector<double>& shifts_bohr,
                                             const std::vector<bool>& self_polarization_values,
                                             const LanczosOptions& options);

struct ResonanceResult {
  double epsilon_1 = 0.0;
  double epsilon_2 = 0.0;
  double omega = 0.0;                  // epsilon_2 - epsilon_1
  double extension_criterion_1 = 0.0;  // with the template's lambda
  double extension_criterion_2 = 0.0;
  std::vector<double> matter_eigenvalues;
  std::vector<double> residuals;
  bool converged = false;
  double wall_seconds = 0.0;
};

// Lowest bare-matter gap. Throws DomainError with fewer than two bound states.
ResonanceResult find_resonance(const ModelTemplate& model, const LanczosOptions& options);

}  // namespace cavityed

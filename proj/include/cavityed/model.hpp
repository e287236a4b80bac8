#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cavityed/grid1d.hpp"
#include "cavityed/lanczos.hpp"
#include "cavityed/photon.hpp"
#include "cavityed/tensor_operator.hpp"

namespace cavityed {

// Single-mode coupling. lambda is the scalar projection of the coupling
// vector on the polarization axis; g/omega = lambda / sqrt(2 omega).
class CavityCoupling {
 public:
  CavityCoupling() = default;
  static CavityCoupling from_lambda(double omega, double lambda);
  static CavityCoupling from_g_over_omega(double omega, double g_over_omega);
  // Both given: they must agree to 1e-12 relative; stored as given.
  static CavityCoupling from_both(double omega, double lambda, double g_over_omega);

  double omega() const { return omega_; }
  double lambda() const { return lambda_; }
  double g_over_omega() const { return g_over_omega_; }

  bool self_polarization = true;  // length gauge (lambda R)^2 / 2
  bool diamagnetic = true;        // Coulomb gauge A^2 term

  bool operator==(const CavityCoupling&) const = default;

 private:
  CavityCoupling(double omega, double lambda, double g_over_omega);
  double omega_ = 1.0;
  double lambda_ = 0.0;
  double g_over_omega_ = 0.0;
};

enum class ModelKind { ShinMetiu, ScreenedHydrogen, PinnedDipole, HarmonicWell };
enum class Gauge { Length, Coulomb };

std::string_view to_string(ModelKind kind);
std::string_view to_string(Gauge gauge);
ModelKind parse_model_kind(std::string_view text);
Gauge parse_gauge(std::string_view text);

struct ModelSpec {
  ModelKind kind = ModelKind::ScreenedHydrogen;
  ShinMetiuParams shin_metiu;
  ScreenedHydrogenParams hydrogen;
  double pinned_dipole = 0.0;   // R0, atomic units
  double harmonic_omega = 1.0;  // test well v = omega^2 x^2 / 2

  std::optional<Grid1D> electron_grid;
  std::optional<Grid1D> nuclear_grid;
  FockSpace fock;
  CavityCoupling coupling;
  Gauge gauge = Gauge::Length;
  bool subtract_vacuum = true;
  // Position of the molecular frame origin in the coordinate system (bohr).
  // Potentials are evaluated relative to it; the dipole uses raw coordinates.
  double frame_origin = 0.0;

  // Grid presence per kind, pinned nuclei off the nuclear grid, positive parameters.
  void validate() const;
  bool has_nucleus() const { return kind == ModelKind::ShinMetiu; }
};

// Subsystem names used in every HamiltonianSpec built here.
inline constexpr std::string_view kPhoton = "photon";
inline constexpr std::string_view kNucleus = "nucleus";
inline constexpr std::string_view kElectron = "electron";
inline constexpr std::string_view kDipole = "dipole";  // 1-dim matter slot of the pinned model

// Matter block layout (all subsystems after the photon) and its diagonals.
std::vector<Subsystem> matter_subsystems(const ModelSpec& model);
std::vector<double> matter_potential(const ModelSpec& model);
// R = -x + Z X on the matter block (R0 for the pinned dipole).
std::vector<double> matter_dipole(const ModelSpec& model);

// H_matter (x) I + I (x) [-(1/2) d2 + (w^2/2) p^2 - w/2]
//   - w lambda (p (x) R) + s (lambda^2 / 2) (I (x) R^2)
HamiltonianSpec build_length_gauge(const ModelSpec& model);

// sum_i [T_i - (q_i/m_i) lambda (q_c (x) p_i) + d (q_i^2 / 2 m_i) lambda^2 (q_c^2 (x) I)]
//   + V + w a^+ a, complex scalar field.
HamiltonianSpec build_coulomb_gauge(const ModelSpec& model);

// Dispatches on model.gauge.
HamiltonianSpec build_hamiltonian(const ModelSpec& model);

// Matter-only operator on the matter block (no photon subsystem).
HamiltonianSpec build_matter_hamiltonian(const ModelSpec& model);

struct MatterSpectrum {
  SpectrumResult<double> spectrum;
  std::vector<bool> bound;  // eigenvalue < 0
};

MatterSpectrum bare_matter_spectrum(const ModelSpec& model, std::size_t k, const LanczosOptions& options = {});

// lambda^2 / (4 epsilon^2) for a bound-state energy epsilon < 0.
double extension_criterion(double lambda, double epsilon);

}  // namespace cavityed

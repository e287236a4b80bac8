#pragma once

#include <complex>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "cavityed/model.hpp"

namespace cavityed {

struct FieldExpectations {
  double D_perp = 0.0;  // (w lambda / 4 pi) <p>
  double P_perp = 0.0;  // (lambda^2 / 4 pi) <R>
  double E_perp = 0.0;  // 4 pi (D - P)
};

struct PhotonNumbers {
  double N_physical = 0.0;  // occupation of the displaced coordinate p - lambda R / w
  double N_naive = 0.0;     // occupation of the bare coordinate p
};

// Length-gauge fields and occupations are left empty for Coulomb-gauge states.
struct ObservableSet {
  double dipole_R = 0.0;
  std::optional<double> expect_p;
  std::optional<FieldExpectations> fields;
  std::optional<PhotonNumbers> photons;
  std::vector<double> electron_density;  // sum * spacing = 1
  std::vector<double> nuclear_density;
  std::vector<double> photon_populations;  // Fock-state probabilities
};

// <psi| (-x + Z X) |psi>
template <class T>
double dipole_expectation(std::span<const T> psi, const ModelSpec& model);

// <psi| p_coord |psi>, using the same truncated matrix as the Hamiltonian.
template <class T>
double photon_coordinate_expectation(std::span<const T> psi, const ModelSpec& model);

FieldExpectations field_expectations(std::span<const double> psi, const ModelSpec& model);
PhotonNumbers photon_numbers(std::span<const double> psi, const ModelSpec& model);

// Marginal probability on one subsystem (photon, nucleus or electron),
// normalized so that sum(n) * spacing = 1 (spacing 1 for the photon).
template <class T>
std::vector<double> reduced_density(std::span<const T> psi, const ModelSpec& model, std::string_view subsystem);

template <class T>
ObservableSet evaluate_observables(std::span<const T> psi, const ModelSpec& model);

}  // namespace cavityed

#pragma once

#include <complex>
#include <string>
#include <variant>
#include <vector>

#include "cavityed/lanczos.hpp"
#include "cavityed/model.hpp"
#include "cavityed/observables.hpp"

namespace cavityed {

// Fock-edge population above which a state is reported as truncation-limited.
inline constexpr double kTruncationThreshold = 1e-8;

struct ModelSolution {
  std::vector<double> eigenvalues;
  std::vector<double> residual_norms;
  std::vector<bool> converged;
  std::size_t iterations = 0;
  std::size_t restarts = 0;
  std::vector<std::string> warnings;
  std::vector<ObservableSet> observables;  // one per eigenpair
  std::variant<std::vector<std::vector<double>>, std::vector<std::vector<std::complex<double>>>> eigenvectors;
  double wall_seconds = 0.0;

  bool all_converged() const;
};

// Builds the coupled Hamiltonian for model.gauge, finds the lowest
// options.k eigenpairs and evaluates observables on each of them.
ModelSolution solve_model(const ModelSpec& model, const LanczosOptions& options);

// Warning text if either of the two highest Fock states holds more than
// kTruncationThreshold of the probability; empty otherwise.
std::string truncation_warning(const std::vector<double>& photon_populations, std::size_t state_index);

}  // namespace cavityed

#include "cavityed/solve.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>

namespace cavityed {

bool ModelSolution::all_converged() const {
  return std::all_of(converged.begin(), converged.end(), [](bool c) { return c; });
}

std::string truncation_warning(const std::vector<double>& pops, std::size_t state_index) {
  if (pops.size() < 2) return {};
  const double top = pops[pops.size() - 1];
  const double next = pops[pops.size() - 2];
  if (top < kTruncationThreshold && next < kTruncationThreshold) return {};
  char buf[160];
  std::snprintf(buf, sizeof buf, "state %zu: Fock truncation, top-two populations %.3e %.3e exceed %.0e", state_index,
                next, top, kTruncationThreshold);
  return buf;
}

namespace {

template <class T>
ModelSolution solve_typed(const ModelSpec& model, const LanczosOptions& options) {
  const TensorOperator<T> op(build_hamiltonian(model));
  auto spectrum = lowest_eigenpairs<T>([&op](std::span<const T> x, std::span<T> y) { op.apply(x, y); },
                                       op.dimension(), options);
  ModelSolution s;
  s.eigenvalues = spectrum.eigenvalues;
  s.residual_norms = spectrum.residual_norms;
  s.converged = spectrum.converged;
  s.iterations = spectrum.iterations;
  s.restarts = spectrum.restarts;
  s.warnings = spectrum.warnings;
  for (std::size_t i = 0; i < spectrum.eigenvectors.size(); ++i) {
    s.observables.push_back(evaluate_observables<T>(spectrum.eigenvectors[i], model));
    if (auto w = truncation_warning(s.observables.back().photon_populations, i); !w.empty()) s.warnings.push_back(w);
  }
  s.eigenvectors = std::move(spectrum.eigenvectors);
  return s;
}

}  // namespace

ModelSolution solve_model(const ModelSpec& model, const LanczosOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  ModelSolution s = model.gauge == Gauge::Length ? solve_typed<double>(model, options)
                                                 : solve_typed<std::complex<double>>(model, options);
  s.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return s;
}

}  // namespace cavityed

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace cavityed {

template <class T>
using LinearMap = std::function<void(std::span<const T>, std::span<T>)>;

struct LanczosOptions {
  std::size_t k = 4;
  double tol = 1e-9;            // residual norm ||H psi - E psi|| (hartree)
  std::size_t max_iter = 5000;  // operator applications
  std::uint64_t seed = 20200416;
  std::size_t krylov_dim = 0;   // 0 = max(2k + 30, 48)

  bool operator==(const LanczosOptions&) const = default;
};

// Lowest eigenpairs. eigenvalues ascending; residual_norms are recomputed
// explicitly from H psi - E psi for every returned pair.
template <class T>
struct SpectrumResult {
  std::vector<double> eigenvalues;
  std::vector<std::vector<T>> eigenvectors;
  std::vector<double> residual_norms;
  std::vector<bool> converged;
  std::size_t iterations = 0;  // operator applications
  std::size_t restarts = 0;
  std::vector<std::string> warnings;
  // Index pairs (j, j+1) whose eigenvalue gap is below 10 tol.
  std::vector<std::pair<std::size_t, std::size_t>> clusters;
  // Lowest Ritz value at every convergence check, in order.
  std::vector<double> ritz_history;

  bool all_converged() const;
};

// Thick-restart Lanczos with full (twice-applied Gram-Schmidt)
// reorthogonalization. The Krylov basis is kept explicitly, so the
// projected matrix is the exact Rayleigh quotient of the basis; after a
// restart it carries an arrowhead block from the retained Ritz vectors.
// An exhausted Krylov space (beta ~ 0) is continued with a fresh random
// vector orthogonal to the basis, which recovers degenerate partners.
// Deterministic for a fixed seed and operator.
template <class T>
SpectrumResult<T> lowest_eigenpairs(const LinearMap<T>& op, std::size_t dimension, const LanczosOptions& options);

extern template SpectrumResult<double> lowest_eigenpairs(const LinearMap<double>&, std::size_t, const LanczosOptions&);
extern template SpectrumResult<std::complex<double>> lowest_eigenpairs(const LinearMap<std::complex<double>>&,
                                                                       std::size_t, const LanczosOptions&);

}  // namespace cavityed

#include "cavityed/lanczos.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "cavityed/error.hpp"

namespace cavityed {

template <class T>
bool SpectrumResult<T>::all_converged() const {
  return std::all_of(converged.begin(), converged.end(), [](bool c) { return c; });
}

template struct SpectrumResult<double>;
template struct SpectrumResult<std::complex<double>>;

namespace {

template <class T>
using Mat = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
template <class T>
using Vec = Eigen::Matrix<T, Eigen::Dynamic, 1>;

template <class T>
T random_entry(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  if constexpr (std::is_same_v<T, double>) {
    return dist(rng);
  } else {
    const double re = dist(rng);
    const double im = dist(rng);
    return T(re, im);
  }
}

template <class T>
void orthogonalize(const Mat<T>& basis, Eigen::Index size, Vec<T>& w, Vec<T>* coeffs) {
  // Two passes of classical Gram-Schmidt.
  Vec<T> h = basis.leftCols(size).adjoint() * w;
  w.noalias() -= basis.leftCols(size) * h;
  Vec<T> h2 = basis.leftCols(size).adjoint() * w;
  w.noalias() -= basis.leftCols(size) * h2;
  if (coeffs) *coeffs = h + h2;
}

}  // namespace

template <class T>
SpectrumResult<T> lowest_eigenpairs(const LinearMap<T>& op, std::size_t dimension, const LanczosOptions& options) {
  if (options.k == 0) throw ParameterError("lowest_eigenpairs: k must be at least 1");
  if (!(options.tol > 0.0)) throw ParameterError("lowest_eigenpairs: tol must be positive");
  if (dimension == 0) throw DimensionError("lowest_eigenpairs: empty operator");

  SpectrumResult<T> result;
  const auto n = static_cast<Eigen::Index>(dimension);
  std::size_t k = options.k;
  if (k > dimension) {
    result.warnings.push_back("requested " + std::to_string(k) + " eigenpairs from a " + std::to_string(dimension) +
                              "-dimensional operator; returning all");
    k = dimension;
  }
  std::size_t m_req = options.krylov_dim ? options.krylov_dim : std::max<std::size_t>(2 * k + 30, 48);
  m_req = std::max(m_req, k + 2);
  const auto m = static_cast<Eigen::Index>(std::min<std::size_t>(m_req, dimension));
  const auto kk = static_cast<Eigen::Index>(k);

  std::mt19937_64 rng(options.seed);
  Mat<T> basis(n, m);
  Mat<T> projected = Mat<T>::Zero(m, m);
  Vec<T> w(n);
  Vec<T> coeffs;

  auto apply = [&](const T* in, T* out) {
    op(std::span<const T>(in, dimension), std::span<T>(out, dimension));
    ++result.iterations;
  };

  auto fresh_vector = [&](Eigen::Index size) -> bool {
    for (int attempt = 0; attempt < 3; ++attempt) {
      for (Eigen::Index i = 0; i < n; ++i) w(i) = random_entry<T>(rng);
      if (size > 0) orthogonalize<T>(basis, size, w, nullptr);
      const double nrm = w.norm();
      if (nrm > 1e-8) {
        basis.col(size) = w / nrm;
        return true;
      }
    }
    return false;
  };

  fresh_vector(0);
  Eigen::Index size = 1;
  double beta = 0.0;
  double scale = 0.0;
  bool exhausted = false;
  Eigen::SelfAdjointEigenSolver<Mat<T>> ritz;

  while (true) {
    const Eigen::Index j = size - 1;
    apply(basis.col(j).data(), w.data());
    orthogonalize<T>(basis, size, w, &coeffs);
    for (Eigen::Index i = 0; i < size; ++i) {
      projected(i, j) = coeffs(i);
      projected(j, i) = Eigen::numext::conj(coeffs(i));
    }
    projected(j, j) = T(Eigen::numext::real(coeffs(j)));
    beta = w.norm();
    scale = std::max(scale, std::abs(Eigen::numext::real(coeffs(j))));

    const bool full = size == m;
    const bool breakdown = beta <= 1e-12 * std::max(scale, 1.0);
    const bool budget_out = result.iterations >= options.max_iter;
    const bool check = size >= kk && (full || breakdown || budget_out || size % 4 == 0);

    if (check) {
      ritz.compute(projected.topLeftCorner(size, size));
      const auto& theta = ritz.eigenvalues();
      const auto& s = ritz.eigenvectors();
      result.ritz_history.push_back(theta(0));
      bool converged = true;
      for (Eigen::Index i = 0; i < kk; ++i)
        if (beta * std::abs(s(size - 1, i)) > options.tol) converged = false;
      if (breakdown && size == n) exhausted = true;
      if (converged || exhausted || budget_out) break;

      if (full) {
        // Thick restart: keep the lowest p Ritz vectors plus the residual direction.
        const Eigen::Index p = std::min<Eigen::Index>(m - 2, kk + (m - kk) / 2);
        Mat<T> kept = basis.leftCols(size) * s.leftCols(p);
        basis.leftCols(p) = kept;
        projected.setZero();
        for (Eigen::Index i = 0; i < p; ++i) projected(i, i) = T(theta(i));
        if (breakdown) {
          if (!fresh_vector(p)) {
            exhausted = true;
            break;
          }
        } else {
          basis.col(p) = w / beta;
          for (Eigen::Index i = 0; i < p; ++i) {
            projected(p, i) = T(beta) * s(size - 1, i);
            projected(i, p) = Eigen::numext::conj(projected(p, i));
          }
        }
        size = p + 1;
        ++result.restarts;
        continue;
      }
    }
    if (budget_out) {
      ritz.compute(projected.topLeftCorner(size, size));
      break;
    }
    if (breakdown) {
      if (size == n || !fresh_vector(size)) {
        ritz.compute(projected.topLeftCorner(size, size));
        exhausted = true;
        break;
      }
    } else {
      basis.col(size) = w / beta;
    }
    ++size;
  }

  const auto& theta = ritz.eigenvalues();
  const auto& s = ritz.eigenvectors();
  const Eigen::Index found = std::min<Eigen::Index>(kk, theta.size());
  Vec<T> hy(n);
  for (Eigen::Index i = 0; i < found; ++i) {
    Vec<T> y = basis.leftCols(size) * s.col(i);
    y /= y.norm();
    op(std::span<const T>(y.data(), dimension), std::span<T>(hy.data(), dimension));
    const double energy = Eigen::numext::real(y.dot(hy));
    const double residual = (hy - energy * y).norm();
    result.eigenvalues.push_back(energy);
    result.residual_norms.push_back(residual);
    result.converged.push_back(residual <= options.tol);
    result.eigenvectors.emplace_back(y.data(), y.data() + n);
  }
  if (found < kk)
    result.warnings.push_back("Krylov space exhausted after " + std::to_string(found) + " eigenpairs");

  // Rayleigh quotients can reorder nearly degenerate pairs by rounding.
  std::vector<std::size_t> order(result.eigenvalues.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return result.eigenvalues[a] < result.eigenvalues[b]; });
  SpectrumResult<T> sorted = result;
  for (std::size_t i = 0; i < order.size(); ++i) {
    sorted.eigenvalues[i] = result.eigenvalues[order[i]];
    sorted.residual_norms[i] = result.residual_norms[order[i]];
    sorted.converged[i] = result.converged[order[i]];
    sorted.eigenvectors[i] = std::move(result.eigenvectors[order[i]]);
  }
  result = std::move(sorted);

  for (std::size_t i = 0; i + 1 < result.eigenvalues.size(); ++i)
    if (result.eigenvalues[i + 1] - result.eigenvalues[i] < 10.0 * options.tol) result.clusters.emplace_back(i, i + 1);
  if (!result.all_converged())
    result.warnings.push_back("not all eigenpairs reached the residual tolerance within " +
                              std::to_string(options.max_iter) + " operator applications");
  return result;
}

template SpectrumResult<double> lowest_eigenpairs(const LinearMap<double>&, std::size_t, const LanczosOptions&);
template SpectrumResult<std::complex<double>> lowest_eigenpairs(const LinearMap<std::complex<double>>&, std::size_t,
                                                                const LanczosOptions&);

}  // namespace cavityed
